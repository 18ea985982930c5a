#include "rsg/baseline.hpp"

#include <cmath>

#include "rsg/constants.hpp"
#include "rsg/errors.hpp"

namespace rsg {

namespace {

// log C(n, j) = j log n + sum log(1 - i/n) - log j!
long double log_binom(long double n, int j) {
    if (n < j) return -INFINITY;
    long double s = j * std::log(n) - std::lgamma(static_cast<long double>(j) + 1.0L);
    for (int i = 1; i < j; ++i) s += std::log1p(-static_cast<long double>(i) / n);
    return s;
}

long double logsumexp(long double a, long double b) {
    if (a < b) std::swap(a, b);
    if (b == -INFINITY) return a;
    return a + std::log1p(std::exp(b - a));
}

int blue_size(double C, int ell) { return static_cast<int>(std::ceil(C * ell - 1e-9)); }

}  // namespace

long double log_f(long double n, double p, int ell, int m) {
    long double a = log_binom(n, ell) + 0.5L * ell * (ell - 1) * std::log(static_cast<long double>(p));
    long double b = log_binom(n, m) + 0.5L * m * (m - 1) * std::log1p(-static_cast<long double>(p));
    return logsumexp(a, b);
}

std::pair<double, long double> minimize_over_p(long double n, int ell, int m) {
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = 1e-9, hi = 0.5;
    double x1 = hi - invphi * (hi - lo), x2 = lo + invphi * (hi - lo);
    long double f1 = log_f(n, x1, ell, m), f2 = log_f(n, x2, ell, m);
    while (hi - lo > 1e-13) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - invphi * (hi - lo);
            f1 = log_f(n, x1, ell, m);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + invphi * (hi - lo);
            f2 = log_f(n, x2, ell, m);
        }
    }
    double p = 0.5 * (lo + hi);
    long double v = log_f(n, p, ell, m);
    long double edge = log_f(n, 0.5, ell, m);
    if (edge <= v) return {0.5, edge};
    return {p, v};
}

BaselineResult erdos_bound(double C, int ell, double threshold) {
    if (!(C >= 1.0)) domain_fail("erdos_bound: C must be >= 1");
    if (ell < 3) domain_fail("erdos_bound: ell must be >= 3");
    if (!(threshold > 0.0 && threshold < 1.0)) domain_fail("erdos_bound: threshold must lie in (0,1)");
    BaselineResult res;
    res.C = C;
    res.ell = ell;
    res.blue_size = blue_size(C, ell);
    res.threshold = threshold;
    const int m = res.blue_size;
    const long double lt = std::log(static_cast<long double>(threshold));
    auto g = [&](long double n) { return minimize_over_p(n, ell, m).second; };

    // Exponential search then bisection on log n, with n treated as real.
    long double lo = std::log(static_cast<long double>(std::max(ell, m)));
    if (g(std::exp(lo)) > lt) domain_fail("erdos_bound: threshold unattainable even at n = max(ell, Cell)");
    long double step = 1.0L, hi = lo + step;
    while (g(std::exp(hi)) <= lt) {
        lo = hi;
        step *= 2;
        hi = lo + step;
        if (hi > 40000.0L) throw InfeasibleError("erdos_bound: n overflows the search range");
    }
    for (int it = 0; it < 200 && hi - lo > 1e-16L * hi; ++it) {
        long double mid = 0.5L * (lo + hi);
        if (g(std::exp(mid)) <= lt)
            lo = mid;
        else
            hi = mid;
    }
    // Floor, then settle the integer sandwich by bisection on integers. Above 2^63 the
    // integers are not all representable and the sandwich is reported as unverified.
    const long double floor_n = std::max(ell, m);
    long double n = std::max(floor_n, std::floor(std::exp(lo)));
    if (n < 0x1p63L) {
        long double a = n, b = std::ceil(std::exp(hi)) + 1;
        while (a > floor_n && g(a) > lt) a = std::max(floor_n, std::floor(a / 2));
        while (g(b) <= lt) b *= 2;
        while (b - a > 1) {
            const long double mid = std::floor((a + b) / 2);
            if (g(mid) <= lt)
                a = mid;
            else
                b = mid;
        }
        n = a;
    }

    auto [p, v] = minimize_over_p(n, ell, m);
    res.n_opt = n;
    res.p_opt = p;
    res.log_n = static_cast<double>(std::log(n));
    res.log_f = static_cast<double>(v);
    res.log_f_next = static_cast<double>(g(n + 1));
    res.log_A = static_cast<double>(log_binom(n, ell) + 0.5L * ell * (ell - 1) * std::log(static_cast<long double>(p)));
    res.log_B = static_cast<double>(log_binom(n, m) + 0.5L * m * (m - 1) * std::log1p(-static_cast<long double>(p)));
    res.sandwich = v <= lt && g(n + 1) > lt;
    return res;
}

std::vector<DriftRow> p_drift_check(double C, const std::vector<int>& ells) {
    const double pc = solve_p_C(C);
    std::vector<DriftRow> rows;
    for (std::size_t i = 0; i < ells.size(); ++i) {
        if (i > 0 && ells[i] <= ells[i - 1]) domain_fail("p_drift_check: ell list must be increasing");
        BaselineResult b = erdos_bound(C, ells[i]);
        rows.push_back({ells[i], b.p_opt, std::abs(b.p_opt - pc)});
    }
    return rows;
}

BetaC beta_C(double C) {
    if (!(C >= 1.0)) domain_fail("beta_C: C must be >= 1");
    if (C == 1.0) return {1.0, true};
    const double p = solve_p_C(C);
    const double l1p = std::log1p(-p);
    const double H = -p * std::log(p) - (1.0 - p) * l1p;
    const double expo = ((C - 1.0) / 2.0 * l1p - std::log(C)) * (1.0 - p) * l1p / H;
    return {std::exp(expo), false};
}

ImprovementRatio improvement_ratio(double C, int ell, double eps_override) {
    const ThresholdConstants t = threshold_constants(C);
    ImprovementRatio r;
    r.log_sphere = ell * std::log(t.M_C + eps_override);
    r.log_erdos = erdos_bound(C, ell).log_n;
    r.log_ratio = r.log_sphere - r.log_erdos;
    r.log_gain_leading = ell * std::log1p(eps_override / t.M_C);
    return r;
}

ImprovementRatio improvement_ratio(double C, int ell) {
    if (!(C > 1.0)) domain_fail("improvement_ratio: C must be > 1");
    return improvement_ratio(C, ell, threshold_constants(C).eps);
}

}  // namespace rsg
