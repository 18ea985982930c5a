#include "rsg/perfect.hpp"

#include <algorithm>
#include <cmath>

#include "rsg/errors.hpp"

namespace rsg {

double perfect_bound(double alpha, double ell, double k) { return alpha * std::sqrt(ell) / std::sqrt(k); }

Eigen::MatrixXd as_matrix(const Sequence& seq) {
    if (seq.empty()) domain_fail("empty sequence");
    const auto dim = seq.front().coords().size();
    Eigen::MatrixXd X(dim, static_cast<Eigen::Index>(seq.size()));
    for (std::size_t i = 0; i < seq.size(); ++i) {
        if (seq[i].coords().size() != dim) domain_fail("sequence points differ in dimension");
        X.col(static_cast<Eigen::Index>(i)) = seq[i].coords();
    }
    return X;
}

namespace {

void require_unit_columns(const Eigen::MatrixXd& X) {
    for (Eigen::Index i = 0; i < X.cols(); ++i)
        if (std::abs(X.col(i).norm() - 1.0) > 1e-10) domain_fail("sequence contains a non-unit point");
}

}  // namespace

std::vector<double> projection_norms(const Eigen::MatrixXd& X) {
    std::vector<double> norms;
    std::vector<Eigen::VectorXd> basis;
    for (Eigen::Index i = 0; i < X.cols(); ++i) {
        Eigen::VectorXd x = X.col(i);
        if (i > 0) {
            Eigen::VectorXd proj = Eigen::VectorXd::Zero(x.size());
            for (const auto& e : basis) proj += e.dot(x) * e;
            norms.push_back(proj.norm());
        }
        Eigen::VectorXd w = x;
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& e : basis) w -= e.dot(w) * e;
        double n = w.norm();
        if (n > 1e-12) basis.push_back(w / n);
    }
    return norms;
}

PerfectVerdict is_perfect(const Eigen::MatrixXd& X, double bound) {
    require_unit_columns(X);
    PerfectVerdict v;
    v.bound = bound;
    v.per_index_norms = projection_norms(X);
    v.is_perfect = std::all_of(v.per_index_norms.begin(), v.per_index_norms.end(),
                               [bound](double n) { return n <= bound; });
    return v;
}

PerfectVerdict is_perfect(const Sequence& seq, double alpha, double ell, double k) {
    return is_perfect(as_matrix(seq), perfect_bound(alpha, ell, k));
}

NonPerfectProfile profile_from_norms(const std::vector<double>& norms, double bound) {
    NonPerfectProfile prof;
    const int r = static_cast<int>(norms.size()) + 1;
    for (int i = 2; i <= r; ++i)
        if (norms[static_cast<std::size_t>(i - 2)] > bound) prof.J.push_back(i);
    prof.index = static_cast<int>(prof.J.size());
    prof.faithful = true;
    for (int t = 0; t < prof.index; ++t)
        if (prof.J[static_cast<std::size_t>(t)] != r - prof.index + 1 + t) prof.faithful = false;
    return prof;
}

NonPerfectProfile non_perfect_index(const Sequence& seq, double alpha, double ell, double k) {
    Eigen::MatrixXd X = as_matrix(seq);
    require_unit_columns(X);
    return profile_from_norms(projection_norms(X), perfect_bound(alpha, ell, k));
}

std::vector<int> faithful_permutation(const NonPerfectProfile& profile, int r) {
    std::vector<bool> in_J(static_cast<std::size_t>(r + 1), false);
    for (int j : profile.J) in_J[static_cast<std::size_t>(j)] = true;
    std::vector<int> perm;
    for (int i = 1; i <= r; ++i)
        if (!in_J[static_cast<std::size_t>(i)]) perm.push_back(i - 1);
    for (int j : profile.J) perm.push_back(j - 1);
    return perm;
}

Sequence faithful_reorder(const Sequence& seq, double alpha, double ell, double k) {
    NonPerfectProfile prof = non_perfect_index(seq, alpha, ell, k);
    Sequence out;
    for (int i : faithful_permutation(prof, static_cast<int>(seq.size()))) out.push_back(seq[static_cast<std::size_t>(i)]);
    return out;
}

SequenceDecomposition dual_basis(const Sequence& seq) { return dual_basis(as_matrix(seq)); }

SequenceDecomposition dual_basis(const Eigen::MatrixXd& X) {
    const Eigen::Index r = X.cols();
    if (r < 1 || X.rows() < r) throw SingularSequenceError("dual_basis: need 1 <= r <= k+1 columns");
    SequenceDecomposition dec;
    dec.X = X;
    dec.gram = X.transpose() * X;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eg(dec.gram);
    if (!(eg.eigenvalues().minCoeff() > kRankThreshold))
        throw SingularSequenceError("dual_basis: Gram matrix is numerically rank deficient");
    dec.lambda = eg.eigenvalues().reverse();
    Eigen::LLT<Eigen::MatrixXd> llt(dec.gram);
    if (llt.info() != Eigen::Success) throw SingularSequenceError("dual_basis: Cholesky factorization failed");
    Eigen::MatrixXd ginv = llt.solve(Eigen::MatrixXd::Identity(r, r));
    dec.V = X * ginv;
    Eigen::MatrixXd vtv = dec.V.transpose() * dec.V;
    dec.mu = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(vtv, Eigen::EigenvaluesOnly).eigenvalues();

    dec.E.resize(X.rows(), r);
    for (Eigen::Index i = 0; i < r; ++i) {
        Eigen::VectorXd w = X.col(i);
        for (int pass = 0; pass < 2; ++pass)
            for (Eigen::Index j = 0; j < i; ++j) w -= dec.E.col(j).dot(w) * dec.E.col(j);
        w /= w.norm();
        if (w.dot(X.col(i)) < 0) w = -w;
        dec.E.col(i) = w;
    }
    return dec;
}

Eigen::VectorXd corner_coordinates(const SequenceDecomposition& dec, const Eigen::VectorXd& y) {
    Eigen::VectorXd py = dec.E * (dec.E.transpose() * y);
    Eigen::MatrixXd vtv = dec.V.transpose() * dec.V;
    return vtv.ldlt().solve(dec.V.transpose() * py);
}

bool corner_member(const Eigen::VectorXd& a, double cutoff, bool red) {
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        if (red && !(a[i] <= cutoff)) return false;
        if (!red && !(a[i] > cutoff)) return false;
    }
    return true;
}

namespace {

// |pi_{span of columns other than i}(w)|^2 given the Gram matrix M of those columns and b = V^T w.
double projection_sq_excluding(const Eigen::MatrixXd& M, const Eigen::VectorXd& b, Eigen::Index i) {
    const Eigen::Index r = M.rows();
    if (r == 1) return 0.0;
    std::vector<Eigen::Index> idx;
    for (Eigen::Index j = 0; j < r; ++j)
        if (j != i) idx.push_back(j);
    const auto m = static_cast<Eigen::Index>(idx.size());
    Eigen::MatrixXd Mo(m, m);
    Eigen::VectorXd bo(m);
    for (Eigen::Index a = 0; a < m; ++a) {
        bo[a] = b[idx[a]];
        for (Eigen::Index c = 0; c < m; ++c) Mo(a, c) = M(idx[a], idx[c]);
    }
    return bo.dot(Mo.ldlt().solve(bo));
}

}  // namespace

SpectralDiagnostics spectral_diagnostics(const SequenceDecomposition& dec, double D) {
    SpectralDiagnostics s;
    s.D = D;
    const Eigen::Index r = dec.r();
    const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(r, r);
    s.max_lambda_dev = (dec.lambda.array() - 1.0).abs().maxCoeff();
    s.gram_frobenius = (dec.gram - I).squaredNorm();
    for (Eigen::Index i = 0; i < r; ++i)
        for (Eigen::Index j = 0; j < r; ++j)
            if (i != j) {
                double d = dec.X.col(i).dot(dec.X.col(j));
                s.gram_pairs += d * d;
            }
    s.gram_eigen = (dec.lambda.array() - 1.0).square().sum();
    Eigen::MatrixXd vtv = dec.V.transpose() * dec.V;
    s.dual_frobenius = (vtv - I).squaredNorm();
    s.dual_eigen = (dec.mu.array() - 1.0).square().sum();
    for (Eigen::Index i = 0; i < r; ++i) s.dual_projection += projection_sq_excluding(vtv, vtv.col(i), i);
    return s;
}

std::vector<AlignmentRow> basis_alignment(const SequenceDecomposition& dec) {
    const Eigen::Index r = dec.r();
    Eigen::MatrixXd vtv = dec.V.transpose() * dec.V;
    std::vector<AlignmentRow> rows;
    for (Eigen::Index i = 0; i < r; ++i) {
        AlignmentRow row;
        row.v_dot_e = dec.V.col(i).dot(dec.E.col(i));
        // Independent path: residual of x_i against a fresh basis of x_1..x_{i-1}.
        std::vector<Vec> prefix;
        for (Eigen::Index j = 0; j < i; ++j) prefix.push_back(dec.X.col(j));
        Subspace sub = Subspace::span_of(prefix);
        Eigen::VectorXd xi = dec.X.col(i);
        row.expected = 1.0 / (xi - sub.project(xi)).norm();
        Eigen::VectorXd b = dec.V.transpose() * dec.E.col(i);
        row.residual_projection = std::sqrt(std::max(0.0, projection_sq_excluding(vtv, b, i)));
        rows.push_back(row);
    }
    return rows;
}

}  // namespace rsg
