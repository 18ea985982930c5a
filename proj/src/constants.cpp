#include "rsg/constants.hpp"

#include <boost/math/special_functions/erf.hpp>
#include <cmath>
#include <numbers>

#include "rsg/errors.hpp"
#include "rsg/geometry.hpp"

namespace rsg {

namespace {

constexpr double kInvSqrt2Pi = 0.398942280401432677939946059934;

// Mills ratio (1 - Phi(t)) / phi(t) for t >= 8 by backward continued fraction.
double mills_ratio_cf(double t) {
    double h = t;
    for (int n = 80; n >= 1; --n) h = t + n / h;
    return 1.0 / h;
}

}  // namespace

double normal_pdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

double normal_sf(double x) {
    if (x > 8.0) return normal_pdf(x) * mills_ratio_cf(x);
    if (x < -8.0) return 1.0 - normal_pdf(x) * mills_ratio_cf(-x);
    return 0.5 * std::erfc(x / std::numbers::sqrt2);
}

double normal_cdf(double x) { return normal_sf(-x); }

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) domain_fail("normal_quantile: p must lie in (0,1)");
    if (p == 0.5) return 0.0;
    double x = -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * p);
    // One Newton step against our own cdf keeps the round trip tight.
    double pdf = normal_pdf(x);
    if (pdf > 0) {
        double err = (p < 0.5) ? normal_cdf(x) - p : (1.0 - p) - normal_sf(x);
        x -= err / pdf;
    }
    return x;
}

HazardValue hazard_mu(double t) {
    if (!std::isfinite(t)) domain_fail("hazard_mu: t must be finite");
    if (t > 8.0) return {t, 1.0 / mills_ratio_cf(t)};
    return {t, normal_pdf(t) / normal_sf(t)};
}

double solve_p_C(double C) {
    if (!(C >= 1.0) || !std::isfinite(C)) domain_fail("solve_p_C: C must be >= 1");
    if (C == 1.0) return 0.5;
    auto g = [C](double p) { return C * std::log1p(-p) - std::log(p); };
    double p = bisect(g, 1e-300, 0.5);
    double dg = -C / (1.0 - p) - 1.0 / p;
    double polished = p - g(p) / dg;
    if (polished > 0.0 && polished <= 0.5 && std::abs(g(polished)) <= std::abs(g(p))) p = polished;
    return p;
}

double alpha_C(double C, double p_C) {
    return std::max(1000.0, 20.0 * std::sqrt(C * std::log(10.0 / p_C)));
}

double gap_coefficient(double C, double p) { return 1.0 / (p * p) - C / ((1.0 - p) * (1.0 - p)); }

ThresholdConstants threshold_constants(double C) {
    if (!(C > 1.0) || !std::isfinite(C)) domain_fail("threshold_constants: C must be > 1");
    ThresholdConstants t{};
    t.C = C;
    t.p_C = solve_p_C(C);
    t.M_C = 1.0 / std::sqrt(t.p_C);
    t.alpha_C = alpha_C(C, t.p_C);
    t.f_pC = gap_coefficient(C, t.p_C);
    double phi = normal_pdf(normal_quantile(t.p_C));
    t.eps0 = phi * phi * phi * t.f_pC / 18.0;
    t.D = 1e5 * std::pow(t.alpha_C, 4) / (t.p_C * t.p_C * t.p_C) / t.f_pC;
    t.eps = t.M_C * t.eps0 / (6.0 * t.D);
    return t;
}

double a_coefficient(double c) {
    double g = std::exp(-c * c) / (2.0 * std::numbers::pi);
    return g * std::sqrt(g);
}

PStar select_p_star_detail(double C, double D, double k) {
    if (!(C > 1.0)) domain_fail("select_p_star: C must be > 1");
    if (!(D > 0.0) || !(k >= 1.0)) domain_fail("select_p_star: D > 0 and k >= 1 required");
    const double pc = solve_p_C(C);
    const double f = gap_coefficient(C, pc);
    const double a0 = a_coefficient(solve_cap_threshold(k, pc).c);
    const double scale = a0 / (3.0 * D);
    PStar out{};
    // Work with offsets from p_C: at large D they fall below the spacing of doubles near p_C.
    const double d1 = scale * (0.5 / (pc * pc) - f / 3.0);
    const double d2 = scale * (1.5 / (pc * pc) - f / 3.0);
    out.target = pc - a0 * f / (9.0 * D);
    out.p1 = pc + d1;
    out.p2 = pc + d2;
    if (!(out.p2 < 0.5)) throw InfeasibleError("select_p_star: D too small, bracket leaves (0,1/2)");

    auto a_at = [&](double d) { return pc + d == pc ? a0 : a_coefficient(solve_cap_threshold(k, pc + d).c); };
    // F(p_C + d) - target
    auto excess = [&](double d) {
        const double x = pc + d;
        return d - a_at(d) / (3.0 * D * x * x) + a0 * f / (9.0 * D);
    };
    const double e1 = excess(d1), e2 = excess(d2);
    if (!(e1 < 0.0 && e2 > 0.0))
        throw InfeasibleError("select_p_star: bracket sign condition F(p1) < target < F(p2) fails");
    out.offset = bisect(excess, d1, d2, 1e-13 * (d2 - d1));
    out.p = pc + out.offset;
    out.residual = excess(out.offset);
    out.fp_inequality = std::abs(out.residual) <= 1e-9 * scale;
    // 1 - p + a(p) C / (3D(1-p)^2) <= 1 - p_C - a0 f / (9D)
    const double q = 1.0 - out.p;
    const double slack = -out.offset + a_at(out.offset) * C / (3.0 * D * q * q) + a0 * f / (9.0 * D);
    out.one_minus_p_inequality = slack <= 0.0;
    return out;
}

double select_p_star(double C, double D, double k) { return select_p_star_detail(C, D, k).p; }

}  // namespace rsg
