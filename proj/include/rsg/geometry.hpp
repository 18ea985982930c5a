#pragma once

#include <Eigen/Dense>
#include <vector>

#include "rsg/rng.hpp"

namespace rsg {

using Vec = Eigen::VectorXd;

// Point on S^k stored as k+1 coordinates.
class UnitVector {
public:
    UnitVector() = default;
    // Normalizes; throws DomainError on a zero vector.
    static UnitVector normalized(Vec v);
    // Checks |v| = 1 within tol.
    static UnitVector checked(Vec v, double tol = 1e-12);

    const Vec& coords() const { return v_; }
    int k() const { return static_cast<int>(v_.size()) - 1; }
    double dot(const UnitVector& o) const { return v_.dot(o.v_); }

private:
    explicit UnitVector(Vec v) : v_(std::move(v)) {}
    Vec v_;
};

using Sequence = std::vector<UnitVector>;

struct CapThreshold {
    double k;
    double p;
    double c;
    double residual;
    // -c/sqrt(k): the inner-product cutoff for red edges.
    double cutoff() const;
};

UnitVector sample_unit_vector(int k, Rng& rng);
Sequence sample_sequence(int k, int r, Rng& rng);

// Normalized measure of {x in S^k : <x,e> <= a}.
double cap_probability(double k, double a);
// Density of <x,e> on [-1,1].
double cap_density(double k, double t);

CapThreshold solve_cap_threshold(double k, double p, double bias = 0.0);

struct CpkRow {
    double k;
    double c;
    double gaussian;
    double error;
};

std::vector<CpkRow> verify_cpk_asymptotic(double p, const std::vector<double>& ks);

class Subspace {
public:
    Subspace() = default;
    // Modified Gram-Schmidt with one re-orthogonalization pass.
    static Subspace span_of(const std::vector<Vec>& vs);

    int dim() const { return static_cast<int>(basis_.size()); }
    const std::vector<Vec>& basis() const { return basis_; }
    Vec project(const Vec& y) const;
    Vec coordinates(const Vec& y) const;

private:
    std::vector<Vec> basis_;
};

Vec project(const Subspace& sub, const UnitVector& y);

// P(|pi(y)| > threshold) for y uniform on S^k and a fixed r-dimensional subspace.
double projection_norm_tail(double k, int r, double threshold);
// CDF of Beta(a, b) at x.
double beta_cdf(double a, double b, double x);

struct ShiftedCapResult {
    double estimate;
    double std_error;
    long long n;
    double prediction;
    double exact;
    double c;
    double H;
};

// Monte Carlo P(<y,e> <= -c/sqrt(k) - A/(D sqrt(k))) for y uniform on S^{k-r}.
ShiftedCapResult shifted_cap_check(int k, int r, double p, double A, double D, long long N,
                                   std::uint64_t seed, int workers = 1);

}  // namespace rsg
