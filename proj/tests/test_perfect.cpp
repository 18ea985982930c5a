#include <doctest.h>

#include <cmath>

#include "rsg/errors.hpp"
#include "rsg/geometry.hpp"
#include "rsg/perfect.hpp"

using namespace rsg;

namespace {

UnitVector unit(std::initializer_list<double> xs) {
    Vec v(static_cast<Eigen::Index>(xs.size()));
    int i = 0;
    for (double x : xs) v[i++] = x;
    return UnitVector::normalized(v);
}

Sequence handmade() {
    const double s = std::sqrt(1 - 0.81);
    return {unit({1, 0, 0, 0}), unit({0.9, s, 0, 0}), unit({0, 0, 1, 0})};
}

}  // namespace

TEST_CASE("projection norms of a handmade sequence") {
    const auto n = projection_norms(as_matrix(handmade()));
    REQUIRE(n.size() == 2);
    CHECK(std::abs(n[0] - 0.9) < 1e-14);
    CHECK(std::abs(n[1]) < 1e-14);
}

TEST_CASE("perfectness and the non-perfect profile") {
    const Sequence s = handmade();
    CHECK(is_perfect(as_matrix(s), 0.95).is_perfect);
    CHECK_FALSE(is_perfect(as_matrix(s), 0.5).is_perfect);
    // alpha sqrt(ell)/sqrt(k) = 0.5 with alpha = 0.5, ell = 3, k = 3
    const NonPerfectProfile prof = non_perfect_index(s, 0.5, 3, 3);
    CHECK(prof.index == 1);
    CHECK(prof.J == std::vector<int>{2});
    CHECK_FALSE(prof.faithful);
    CHECK(faithful_permutation(prof, 3) == std::vector<int>{0, 2, 1});
    const Sequence re = faithful_reorder(s, 0.5, 3, 3);
    const NonPerfectProfile after = non_perfect_index(re, 0.5, 3, 3);
    CHECK(after.faithful);
    CHECK(after.index == 1);
    CHECK(after.J == std::vector<int>{3});
}

TEST_CASE("perfectness rejects non-unit input") {
    Eigen::MatrixXd X = as_matrix(handmade());
    X(0, 0) = 1.1;
    CHECK_THROWS_AS(is_perfect(X, 1.0), DomainError);
}

TEST_CASE("dual basis identities") {
    Rng rng = substream(4, 0);
    const SequenceDecomposition dec = dual_basis(sample_sequence(60, 6, rng));
    const int r = dec.r();
    CHECK((dec.V.transpose() * dec.X - Eigen::MatrixXd::Identity(r, r)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((dec.E.transpose() * dec.E - Eigen::MatrixXd::Identity(r, r)).cwiseAbs().maxCoeff() < 1e-12);
    for (int i = 0; i < r; ++i) CHECK(std::abs(dec.mu[i] * dec.lambda[i] - 1.0) < 1e-12);
    for (int i = 0; i + 1 < r; ++i) CHECK(dec.lambda[i] >= dec.lambda[i + 1]);
    const SpectralDiagnostics d = spectral_diagnostics(dec, 3.0);
    CHECK(std::abs(d.gram_frobenius - d.gram_pairs) < 1e-12);
    CHECK(std::abs(d.gram_frobenius - d.gram_eigen) < 1e-12);
    CHECK(std::abs(d.dual_frobenius - d.dual_eigen) < 1e-12);
    for (const auto& row : basis_alignment(dec)) CHECK(std::abs(row.v_dot_e - row.expected) < 1e-10);
}

TEST_CASE("dependent sequences are singular") {
    Sequence s = handmade();
    s.push_back(s[0]);
    CHECK_THROWS_AS(dual_basis(s), SingularSequenceError);
}

TEST_CASE("corner coordinates equal inner products") {
    Rng rng = substream(6, 0);
    for (int t = 0; t < 50; ++t) {
        const int r = 1 + t % 8;
        const Sequence s = sample_sequence(40, r, rng);
        const UnitVector y = sample_unit_vector(40, rng);
        const Eigen::VectorXd a = corner_coordinates(dual_basis(s), y.coords());
        bool red = true, blue = true;
        for (int i = 0; i < r; ++i) {
            CHECK(std::abs(a[i] - y.dot(s[i])) < 1e-12);
            red = red && y.dot(s[i]) <= -0.05;
            blue = blue && y.dot(s[i]) > -0.05;
        }
        CHECK(corner_member(a, -0.05, true) == red);
        CHECK(corner_member(a, -0.05, false) == blue);
    }
}
