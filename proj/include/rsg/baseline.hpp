#pragma once

#include <vector>

namespace rsg {

struct BaselineResult {
    double C = 0;
    int ell = 0;
    int blue_size = 0;        // ceil(C ell)
    double threshold = 0.99;
    double p_opt = 0;
    long double n_opt = 0;    // integer valued
    double log_n = 0;
    double log_A = 0;         // log A(n_opt, p_opt)
    double log_B = 0;         // log B(n_opt, p_opt)
    double log_f = 0;         // min_p log f(n_opt, p)
    double log_f_next = 0;    // min_p log f(n_opt + 1, p)
    bool sandwich = false;
};

// log f(n, p) = log(A + B) with A = C(n, ell) p^C(ell,2), B = C(n, m) (1-p)^C(m,2).
long double log_f(long double n, double p, int ell, int m);
// Golden-section minimum over p in (0, 1/2]; returns {p, value}.
std::pair<double, long double> minimize_over_p(long double n, int ell, int m);

BaselineResult erdos_bound(double C, int ell, double threshold = 0.99);

struct DriftRow {
    int ell;
    double p_opt;
    double drift;  // |p_opt - p_C|
};

std::vector<DriftRow> p_drift_check(double C, const std::vector<int>& ells);

struct BetaC {
    double value;
    bool degenerate;  // C == 1
};

BetaC beta_C(double C);

struct ImprovementRatio {
    double log_sphere;        // ell log(M_C + eps)
    double log_erdos;          // log n_opt
    double log_ratio;          // difference of the two
    double log_gain_leading;   // ell log(1 + eps/M_C): gain over M_C^ell
};

ImprovementRatio improvement_ratio(double C, int ell);
// Same with eps replaced by eps_override (eps_override = 0 gives the hypothetical M_C^ell bound).
ImprovementRatio improvement_ratio(double C, int ell, double eps_override);

}  // namespace rsg
