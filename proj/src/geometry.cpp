#include "rsg/geometry.hpp"

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <numbers>

#include "rsg/constants.hpp"
#include "rsg/errors.hpp"
#include "rsg/frame.hpp"
#include "rsg/parallel.hpp"
#include "rsg/stats.hpp"

namespace rsg {

UnitVector UnitVector::normalized(Vec v) {
    double n = v.norm();
    if (!(n > 0.0) || !std::isfinite(n)) domain_fail("UnitVector: cannot normalize a zero vector");
    v /= n;
    return UnitVector(std::move(v));
}

UnitVector UnitVector::checked(Vec v, double tol) {
    if (v.size() < 2) domain_fail("UnitVector: need at least two coordinates");
    if (std::abs(v.norm() - 1.0) > tol) domain_fail("UnitVector: input is not unit length");
    return UnitVector(std::move(v));
}

double CapThreshold::cutoff() const { return -c / std::sqrt(k); }

UnitVector sample_unit_vector(int k, Rng& rng) {
    if (k < 1) domain_fail("sample_unit_vector: k must be >= 1");
    std::normal_distribution<double> normal;
    Vec v(k + 1);
    for (;;) {
        for (int i = 0; i <= k; ++i) v[i] = normal(rng);
        if (v.squaredNorm() > 0.0) return UnitVector::normalized(std::move(v));
    }
}

Sequence sample_sequence(int k, int r, Rng& rng) {
    Sequence s;
    s.reserve(static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i) s.push_back(sample_unit_vector(k, rng));
    return s;
}

// t = <x,e> satisfies t^2 ~ Beta(1/2, k/2), symmetric about 0.
double cap_probability(double k, double a) {
    if (!(k >= 1.0)) domain_fail("cap_probability: k must be >= 1");
    if (!(a >= -1.0 && a <= 1.0)) domain_fail("cap_probability: a must lie in [-1, 1]");
    if (a == -1.0) return 0.0;
    if (a == 1.0) return 1.0;
    if (a == 0.0) return 0.5;
    double upper = 0.5 * boost::math::ibetac(0.5, 0.5 * k, a * a);
    return a < 0.0 ? upper : 1.0 - upper;
}

double cap_density(double k, double t) {
    if (!(t > -1.0 && t < 1.0)) return 0.0;
    // 1/B(1/2, k/2) = Gamma((k+1)/2) / (sqrt(pi) Gamma(k/2))
    double norm = 1.0 / (std::sqrt(std::numbers::pi) * boost::math::tgamma_delta_ratio(0.5 * k, 0.5));
    return norm * std::exp(0.5 * (k - 2.0) * std::log1p(-t * t));
}

CapThreshold solve_cap_threshold(double k, double p, double bias) {
    if (!(k >= 1.0)) domain_fail("solve_cap_threshold: k must be >= 1");
    if (!(p > 0.0 && p <= 0.5)) domain_fail("solve_cap_threshold: p must lie in (0, 1/2]");
    const double sk = std::sqrt(k);
    CapThreshold out{k, p, 0.0, 0.0};
    if (p == 0.5) {
        out.c = bias;
        if (bias != 0.0) out.residual = std::abs(cap_probability(k, -bias / sk) - p);
        return out;
    }
    // Solve in c = -a sqrt(k), which stays O(1) as k grows; bisecting in a cannot
    // resolve a = O(k^{-1/2}) once k is large.
    auto g = [&](double c) { return cap_probability(k, -c / sk) - p; };
    double c = bisect(g, 0.0, sk, 1e-15);
    for (int i = 0; i < 3; ++i) {
        const double d = cap_density(k, -c / sk) / sk;
        if (!(d > 0.0)) break;
        const double next = c + g(c) / d;
        if (!(next > 0.0 && next < sk) || std::abs(g(next)) >= std::abs(g(c))) break;
        c = next;
    }
    const double a = -c / sk;
    out.c = -a * sk + bias;
    out.residual = std::abs(cap_probability(k, -out.c / sk) - p);
    return out;
}

std::vector<CpkRow> verify_cpk_asymptotic(double p, const std::vector<double>& ks) {
    std::vector<CpkRow> rows;
    double z = p == 0.5 ? 0.0 : normal_quantile(1.0 - p);
    for (double k : ks) {
        if (!(k >= 10.0)) domain_fail("verify_cpk_asymptotic: each k must be >= 10");
        double c = solve_cap_threshold(k, p).c;
        rows.push_back({k, c, z, c - z});
    }
    return rows;
}

Subspace Subspace::span_of(const std::vector<Vec>& vs) {
    Subspace s;
    for (const Vec& v : vs) {
        Vec w = v;
        double orig = w.norm();
        if (!(orig > 0.0)) continue;
        for (int pass = 0; pass < 2; ++pass)
            for (const Vec& e : s.basis_) w -= e.dot(w) * e;
        double n = w.norm();
        if (n <= 1e-12 * orig) continue;
        s.basis_.push_back(w / n);
    }
    return s;
}

Vec Subspace::coordinates(const Vec& y) const {
    Vec c(dim());
    for (int i = 0; i < dim(); ++i) c[i] = basis_[static_cast<std::size_t>(i)].dot(y);
    return c;
}

Vec Subspace::project(const Vec& y) const {
    Vec out = Vec::Zero(y.size());
    for (const Vec& e : basis_) out += e.dot(y) * e;
    return out;
}

Vec project(const Subspace& sub, const UnitVector& y) { return sub.project(y.coords()); }

double beta_cdf(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    return boost::math::ibeta(a, b, x);
}

double projection_norm_tail(double k, int r, double threshold) {
    if (!(threshold >= 0.0)) domain_fail("projection_norm_tail: threshold must be >= 0");
    if (r < 1 || r > k) domain_fail("projection_norm_tail: need 1 <= r <= k");
    if (threshold == 0.0) return 1.0;
    if (threshold >= 1.0) return 0.0;
    return boost::math::ibetac(0.5 * r, 0.5 * (k - r + 1.0), threshold * threshold);
}

ShiftedCapResult shifted_cap_check(int k, int r, double p, double A, double D, long long N,
                                   std::uint64_t seed, int workers) {
    if (N <= 0) domain_fail("shifted_cap_check: N must be positive");
    if (r < 1 || 2 * r > k) domain_fail("shifted_cap_check: need 1 <= r <= k/2");
    if (!(D > 0.0)) domain_fail("shifted_cap_check: D must be positive");
    const double c = solve_cap_threshold(k, p).c;
    const double sk = std::sqrt(static_cast<double>(k));
    const double H = -c / sk - A / (D * sk);
    const double m = static_cast<double>(k - r);
    auto accs = run_workers<Moments>(workers, N, seed, Purpose::Generic,
                                     [&](Rng& rng, long long n, Moments& acc) {
                                         Draws draws;
                                         for (long long i = 0; i < n; ++i)
                                             acc.add(sample_cosine(m, rng, draws) <= H ? 1.0 : 0.0);
                                     });
    Moments tot;
    for (auto& a : accs) tot.merge(a);
    ShiftedCapResult res;
    res.estimate = tot.mean;
    res.std_error = tot.std_error();
    res.n = tot.n;
    res.c = c;
    res.H = H;
    res.prediction = p - A * std::exp(-0.5 * c * c) / (std::sqrt(2.0 * std::numbers::pi) * D);
    res.exact = cap_probability(m, std::max(-1.0, H));
    return res;
}

}  // namespace rsg
