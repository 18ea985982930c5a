#pragma once

#include <Eigen/Dense>
#include <vector>

#include "rsg/geometry.hpp"

namespace rsg {

// alpha * sqrt(ell) / sqrt(k)
double perfect_bound(double alpha, double ell, double k);

// Columns of the returned matrix are the sequence points.
Eigen::MatrixXd as_matrix(const Sequence& seq);

// |pi_[i](x_{i+1})| for i = 1..r-1 (columns of X are the points).
std::vector<double> projection_norms(const Eigen::MatrixXd& X);

struct PerfectVerdict {
    bool is_perfect = true;
    std::vector<double> per_index_norms;
    double bound = 0.0;
};

PerfectVerdict is_perfect(const Sequence& seq, double alpha, double ell, double k);
PerfectVerdict is_perfect(const Eigen::MatrixXd& X, double bound);

struct NonPerfectProfile {
    int index = 0;
    std::vector<int> J;  // 1-based positions in {2..r}
    bool faithful = true;
};

NonPerfectProfile non_perfect_index(const Sequence& seq, double alpha, double ell, double k);
NonPerfectProfile profile_from_norms(const std::vector<double>& norms, double bound);

// Positions (0-based) of the reordering: non-profile entries first, then the profile in order.
std::vector<int> faithful_permutation(const NonPerfectProfile& profile, int r);
Sequence faithful_reorder(const Sequence& seq, double alpha, double ell, double k);

struct SequenceDecomposition {
    Eigen::MatrixXd X;       // (k+1) x r
    Eigen::MatrixXd V;       // X (X^T X)^{-1}
    Eigen::MatrixXd E;       // orthonormal e_1..e_r as columns
    Eigen::MatrixXd gram;    // X^T X
    Eigen::VectorXd lambda;  // eigenvalues of X^T X, descending
    Eigen::VectorXd mu;      // eigenvalues of V^T V, ascending

    int r() const { return static_cast<int>(X.cols()); }
};

inline constexpr double kRankThreshold = 1e-8;

SequenceDecomposition dual_basis(const Sequence& seq);
SequenceDecomposition dual_basis(const Eigen::MatrixXd& X);

// Coefficients a with pi(y) = sum a_i v_i, computed from the e-basis projection of y.
Eigen::VectorXd corner_coordinates(const SequenceDecomposition& dec, const Eigen::VectorXd& y);
bool corner_member(const Eigen::VectorXd& a, double cutoff, bool red);

struct SpectralDiagnostics {
    double max_lambda_dev = 0;     // max |lambda_i - 1|
    double gram_frobenius = 0;     // ||X^T X - I||_F^2 from the matrix
    double gram_pairs = 0;         // sum_{i != j} <x_i, x_j>^2
    double gram_eigen = 0;         // sum (lambda_i - 1)^2
    double dual_frobenius = 0;     // ||V^T V - I||_F^2 from the matrix
    double dual_eigen = 0;         // sum (mu_i - 1)^2
    double dual_projection = 0;    // sum |pi_{V_r(i)}(v_i)|^2
    double D = 0;
};

SpectralDiagnostics spectral_diagnostics(const SequenceDecomposition& dec, double D);

struct AlignmentRow {
    double v_dot_e;            // <v_i, e_i>
    double expected;           // 1 / |x_i - pi_[i-1](x_i)|
    double residual_projection;  // |pi_{V_r(i)}(e_i)|
};

std::vector<AlignmentRow> basis_alignment(const SequenceDecomposition& dec);

}  // namespace rsg
