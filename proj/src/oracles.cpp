#include "rsg/oracles.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <functional>

#include "rsg/errors.hpp"
#include "rsg/estimators.hpp"
#include "rsg/geometry.hpp"

namespace rsg {

namespace {

bool extend(const BitGraph& adj, std::vector<int>& chosen, int next, int size) {
    if (static_cast<int>(chosen.size()) == size) return true;
    for (int v = next; v < adj.n(); ++v) {
        bool ok = true;
        for (int u : chosen)
            if (!adj.has(u, v)) {
                ok = false;
                break;
            }
        if (!ok) continue;
        chosen.push_back(v);
        if (extend(adj, chosen, v + 1, size)) return true;
        chosen.pop_back();
    }
    return false;
}

double simpson(const std::function<double(double)>& f, double a, double b, double fa, double fm, double fb,
               double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

bool brute_force_has_clique(const BitGraph& adj, int size) {
    if (size <= 0) return true;
    if (size > adj.n()) return false;
    std::vector<int> chosen;
    return extend(adj, chosen, 0, size);
}

int brute_force_clique_number(const BitGraph& adj) {
    int best = 0;
    while (best < adj.n() && brute_force_has_clique(adj, best + 1)) ++best;
    return best;
}

double triangle_prob_exact(double k, double p, Color color) {
    const double c = solve_cap_threshold(k, p).c;
    const double h = -c / std::sqrt(k);
    const bool red = color == Color::Red;
    auto integrand = [&](double rho) { return cap_density(k, rho) * exact_pair_region_prob(k, rho, c, color); };
    const double w = 1.0 / std::sqrt(k);
    const double umax = std::sqrt(-std::expm1(-2.0 * 46.0 / std::max(k - 2.0, 1.0)));
    const double lo = red ? -umax : h, hi = red ? h : umax;
    std::vector<double> pts{lo, hi};
    for (double s : {-40.0, -20.0, -10.0, -5.0, -2.0, 0.0, 2.0, 5.0, 10.0, 20.0, 40.0})
        if (s * w > lo && s * w < hi) pts.push_back(s * w);
    std::sort(pts.begin(), pts.end());
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
        total += boost::math::quadrature::gauss_kronrod<double, 15>::integrate(integrand, pts[i], pts[i + 1], 8, 1e-11);
    return total;
}

double cap_probability_simpson(double k, double a, double tol) {
    if (!(k >= 2.0)) domain_fail("cap_probability_simpson: k must be >= 2");
    if (a <= -1.0) return 0.0;
    if (a >= 1.0) return 1.0;
    std::function<double(double)> f = [k](double t) { return cap_density(k, t); };
    // Integrate from the nearer pole; the density is negligible far from 0 for large k.
    const double lo = -1.0;
    std::vector<double> pts{lo};
    const double w = 1.0 / std::sqrt(k);
    for (double s : {-64.0, -32.0, -16.0, -8.0, -4.0, -2.0, -1.0, 0.0, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0})
        if (s * w > lo && s * w < a) pts.push_back(s * w);
    pts.push_back(a);
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const double x0 = pts[i], x1 = pts[i + 1], xm = 0.5 * (x0 + x1);
        const double f0 = f(x0), fm = f(xm), f1 = f(x1);
        total += simpson(f, x0, x1, f0, fm, f1, (x1 - x0) / 6.0 * (f0 + 4.0 * fm + f1), tol, 50);
    }
    return std::clamp(total, 0.0, 1.0);
}

}  // namespace rsg
