#pragma once

namespace rsg {

double normal_pdf(double x);
double normal_cdf(double x);
// Upper tail 1 - Phi(x) without cancellation.
double normal_sf(double x);
double normal_quantile(double p);

struct HazardValue {
    double t;
    double mu;
};

// mu(t) = E[X | X >= t] = phi(t) / (1 - Phi(t)).
HazardValue hazard_mu(double t);

// Root of C*log(1-p) = log(p) in (0, 1/2].
double solve_p_C(double C);

struct ThresholdConstants {
    double C;
    double p_C;
    double M_C;
    double alpha_C;
    double f_pC;
    double eps0;
    double D;
    double eps;
};

double alpha_C(double C, double p_C);
// f(p) = 1/p^2 - C/(1-p)^2
double gap_coefficient(double C, double p);
ThresholdConstants threshold_constants(double C);

// a_{k,p} = (exp(-c^2) / 2pi)^{3/2}
double a_coefficient(double c);

struct PStar {
    double p;
    double offset;  // p - p_C, resolved even when p rounds to p_C
    double target;
    double residual;
    double p1;
    double p2;
    bool fp_inequality;
    bool one_minus_p_inequality;
};

PStar select_p_star_detail(double C, double D, double k);
double select_p_star(double C, double D, double k);

// Bisection on a monotone function to a bracket of width tol.
template <class F>
double bisect(F&& f, double lo, double hi, double tol = 1e-13, int max_iter = 400) {
    double flo = f(lo);
    for (int i = 0; i < max_iter && hi - lo > tol; ++i) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        double fm = f(mid);
        if ((fm < 0) == (flo < 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace rsg
