#include <doctest.h>

#include <cmath>
#include <cstring>

#include "rsg/constants.hpp"
#include "rsg/errors.hpp"
#include "rsg/estimators.hpp"
#include "rsg/oracles.hpp"
#include "rsg/perfect.hpp"

using namespace rsg;

namespace {

const double kP2 = (3.0 - std::sqrt(5.0)) / 2.0;

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

}  // namespace

TEST_CASE("triangle probabilities match nested quadrature") {
    for (Color c : {Color::Red, Color::Blue}) {
        const MCEstimate e = estimate_clique_prob(100, kP2, 3, c, 400000, {21, 2});
        const double exact = triangle_prob_exact(100, kP2, c);
        CHECK(std::abs(e.value - exact) < 4 * e.std_error);
    }
}

TEST_CASE("pair region probability matches full-vector sampling") {
    const int k = 20;
    const double rho = -0.3, c = solve_cap_threshold(k, 0.4).c, cut = -c / std::sqrt(double(k));
    Rng rng = substream(31, 0);
    const int N = 200000;
    int red = 0, blue = 0;
    for (int i = 0; i < N; ++i) {
        const Vec z = sample_unit_vector(k, rng).coords();
        const double a = z[0], b = rho * z[0] + std::sqrt(1 - rho * rho) * z[1];
        red += a <= cut && b <= cut;
        blue += a > cut && b > cut;
    }
    for (auto [hits, col] : {std::pair{red, Color::Red}, std::pair{blue, Color::Blue}}) {
        const double p = exact_pair_region_prob(k, rho, c, col);
        CHECK(std::abs(hits / double(N) - p) < 4 * std::sqrt(p * (1 - p) / N));
    }
}

TEST_CASE("estimates are bit-identical under a fixed seed and worker count") {
    const MCEstimate a = estimate_clique_prob(100, kP2, 4, Color::Blue, 50000, {5, 3});
    const MCEstimate b = estimate_clique_prob(100, kP2, 4, Color::Blue, 50000, {5, 3});
    CHECK(same_bits(a.value, b.value));
    CHECK(same_bits(a.std_error, b.std_error));
    const MCEstimate c = estimate_clique_prob(100, kP2, 4, Color::Blue, 50000, {6, 3});
    CHECK_FALSE(same_bits(a.value, c.value));
}

TEST_CASE("single-point neighborhood has measure p") {
    Rng rng = substream(12, 0);
    const Sequence seq = sample_sequence(100, 1, rng);
    const ModelParams mp = make_params(100, kP2, 2.0, 1.0, false);
    const MCEstimate e = region_acceptance(seq, Color::Red, mp, 100000, {13, 1});
    CHECK(std::abs(e.value - kP2) < 4 * e.std_error);
}

TEST_CASE("perfect red neighborhoods of three points are not too small") {
    const double k = 1e4;
    Rng rng = substream(14, 0);
    const Sequence seq = sample_sequence(static_cast<int>(k), 3, rng);
    const ModelParams mp = make_params(k, 0.382, 2.0, 3.0, true);
    const MCEstimate e = region_acceptance(seq, Color::Red, mp, 4000, {15, 1});
    CHECK(e.value >= std::pow(solve_p_C(2.0) / 2, 3));
}

TEST_CASE("region sampler returns members and reports exhaustion") {
    Rng rng = substream(16, 0);
    const Sequence seq = sample_sequence(30, 2, rng);
    const ModelParams mp = make_params(30, 0.3, 2.0, 2.0, false);
    const RegionSample s = sample_in_region(seq, Color::Red, mp, rng, 100000);
    CHECK(region_member(seq, s.z, Color::Red, mp));
    CHECK(s.tries >= 1);
    const Sequence opposite{seq[0], UnitVector::normalized(-seq[0].coords())};
    CHECK_THROWS_AS(sample_in_region(opposite, Color::Red, mp, rng, 1000), RejectionExhausted);
}

TEST_CASE("kappa for one point is p") {
    const MCEstimate e = estimate_kappa(500, kP2, 1, 2.0, 1, Color::Red, 2000, {17, 1}, 64);
    CHECK(std::abs(e.value - kP2) < 4 * e.std_error);
}

TEST_CASE("perfect fraction of pairs equals the projection tail") {
    // alpha chosen so the bound is 0.15 at k = 100, ell = 1
    const PerfectFraction f = perfect_fraction(100, 1.0, 2.0, 2, 200000, {18, 2}, 1.5);
    const double exact = 1 - projection_norm_tail(100, 1, 0.15);
    CHECK(std::abs(f.union_lower - exact) < 1e-14);
    CHECK(std::abs(f.estimate.value - exact) < 4 * f.estimate.std_error);
    CHECK(f.tail_lower <= f.union_lower);
}

TEST_CASE("red neighborhood measure against its first-order prediction") {
    Rng rng = substream(19, 0);
    const double k = 2000;
    Sequence all = sample_sequence(static_cast<int>(k), 3, rng);
    const UnitVector y = all.back();
    all.pop_back();
    const ModelParams mp = make_params(k, kP2, 2.0, 3.0, true);
    for (Color c : {Color::Red, Color::Blue}) {
        const PredictionComparison pc = estimate_Q(all, y, c, mp, 100000, {20, 1});
        CHECK(std::abs(pc.estimate.value - pc.prediction) < 4 * pc.estimate.std_error + 0.01);
        CHECK(pc.estimate.n_accepted == 100000);
    }
}

TEST_CASE("coefficient mean with a held sequence has the predicted sign") {
    Rng rng = substream(22, 0);
    const double k = 4000;
    const Sequence seq = sample_sequence(static_cast<int>(k), 3, rng);
    const ModelParams mp = make_params(k, kP2, 2.0, 3.0, true);
    const auto red = estimate_coefficient_mean(k, kP2, 3, 1, Color::Red, 20000, {23, 1}, mp, seq);
    const auto blue = estimate_coefficient_mean(k, kP2, 3, 1, Color::Blue, 20000, {24, 1}, mp, seq);
    CHECK(red.estimate.value < -3 * red.estimate.std_error);
    CHECK(blue.estimate.value > 3 * blue.estimate.std_error);
    CHECK(red.prediction < 0);
    CHECK(blue.prediction > 0);
}

TEST_CASE("projection inner product at s = 0 vanishes") {
    const ModelParams mp = make_params(1000, kP2, 2.0, 2.0, true);
    const auto pc = estimate_projection_inner(1000, kP2, 2, 0, Color::Red, 100, {25, 1}, mp);
    CHECK(pc.estimate.value == 0.0);
    CHECK(pc.prediction == 0.0);
    CHECK_THROWS_AS(estimate_projection_inner(1000, kP2, 2, 3, Color::Red, 100, {25, 1}, mp), DomainError);
}

TEST_CASE("neighborhood directions are uniform and decoupled") {
    Rng rng = substream(26, 0);
    const Sequence seq = sample_sequence(60, 2, rng);
    const ModelParams mp = make_params(60, kP2, 2.0, 2.0, true);
    const HatzReport rep = hatz_uniformity_test(seq, Color::Blue, mp, 20000, {27, 2});
    CHECK(rep.pass);
    CHECK(rep.n == 20000);
}

TEST_CASE("desk-scale envelope") {
    CHECK_THROWS_AS(check_envelope(1e5, 3, 1000), InfeasibleError);
    CHECK_THROWS_AS(check_envelope(100, 9, 1000), InfeasibleError);
    CHECK_THROWS_AS(check_envelope(100, 3, 1000000000), InfeasibleError);
    CHECK_NOTHROW(check_envelope(3e4, 8, 100000000));
    const long long n = plan_samples(100, kP2, 3, Color::Red);
    CHECK(n >= 1000);
    CHECK(n <= 100000000);
}

TEST_CASE("comparison z-score") {
    MCEstimate e;
    e.value = 1.0;
    e.std_error = 0.5;
    const PredictionComparison pc = compare(e, 0.0, "test");
    CHECK(pc.z_score == 2.0);
}
