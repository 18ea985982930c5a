#include <doctest.h>

#include <cmath>

#include "rsg/baseline.hpp"
#include "rsg/constants.hpp"
#include "rsg/errors.hpp"

using namespace rsg;

// Frozen n_opt: exact rational arithmetic for C = 1 (p = 1/2 by symmetry);
// mpmath golden section at 40 digits for C = 1.5 and C = 2.

TEST_CASE("C = 1 thresholds match exact integer arithmetic") {
    CHECK(erdos_bound(1.0, 20).n_opt == 5814);
    CHECK(erdos_bound(1.0, 30).n_opt == 272625);
    CHECK(erdos_bound(1.0, 40).n_opt == 11487933);
    CHECK(erdos_bound(1.0, 20).p_opt == 0.5);
}

TEST_CASE("C > 1 thresholds match high precision optimization") {
    const BaselineResult b = erdos_bound(2.0, 20);
    CHECK(b.n_opt == 112652);
    CHECK(b.blue_size == 40);
    CHECK(std::abs(b.p_opt - 0.366593610688134) < 1e-6);
    CHECK(erdos_bound(1.5, 20).n_opt == 31068);
}

TEST_CASE("sandwich invariant") {
    for (double C : {1.0, 1.5, 2.0, 3.0})
        for (int ell : {10, 25, 30}) {
            const BaselineResult b = erdos_bound(C, ell);
            CHECK(b.sandwich);
            CHECK(b.log_f <= std::log(0.99));
            CHECK(b.log_f_next > std::log(0.99));
        }
}

TEST_CASE("golden section agrees with a grid scan") {
    const std::pair<double, int> pairs[] = {{1.0, 12}, {1.5, 20}, {2.0, 15}, {3.0, 10}, {2.5, 30}};
    for (auto [C, ell] : pairs) {
        const BaselineResult b = erdos_bound(C, ell);
        const int m = b.blue_size;
        const int G = 10000;
        double best_p = 0;
        long double best = INFINITY;
        for (int i = 1; i <= G; ++i) {
            const double p = 0.5 * i / G;
            const long double v = log_f(b.n_opt, p, ell, m);
            if (v < best) {
                best = v;
                best_p = p;
            }
        }
        CHECK(std::abs(best_p - b.p_opt) <= 0.5 / G + 1e-9);
        CHECK(b.log_f <= static_cast<double>(best) + 1e-12);
    }
}

TEST_CASE("p drift shrinks with ell") {
    const auto rows = p_drift_check(2.0, {20, 40, 80});
    REQUIRE(rows.size() == 3);
    CHECK(rows[1].drift / rows[0].drift <= 0.7);
    CHECK(rows[2].drift / rows[1].drift <= 0.7);
    CHECK_THROWS_AS(p_drift_check(2.0, {40, 20}), DomainError);
}

TEST_CASE("beta_C") {
    const BetaC one = beta_C(1.0);
    CHECK(one.value == 1.0);
    CHECK(one.degenerate);
    const BetaC two = beta_C(2.0);
    CHECK_FALSE(two.degenerate);
    CHECK(two.value > 0.0);
    CHECK_THROWS_AS(beta_C(0.5), DomainError);
}

TEST_CASE("improvement over the leading term") {
    const ThresholdConstants t = threshold_constants(2.0);
    const ImprovementRatio a = improvement_ratio(2.0, 20), b = improvement_ratio(2.0, 40);
    const double slope = (b.log_gain_leading - a.log_gain_leading) / 20.0;
    CHECK(std::abs(slope / std::log1p(t.eps / t.M_C) - 1.0) <= 0.1);
    // With eps = 0 the bound is M_C^ell, which loses to the first-moment bound.
    const ImprovementRatio z1 = improvement_ratio(2.0, 20, 0.0), z2 = improvement_ratio(2.0, 40, 0.0);
    CHECK((z2.log_ratio - z1.log_ratio) / 20.0 <= 0.0);
}

TEST_CASE("baseline domain errors") {
    CHECK_THROWS_AS(erdos_bound(0.5, 10), DomainError);
    CHECK_THROWS_AS(erdos_bound(2.0, 2), DomainError);
    CHECK_THROWS_AS(erdos_bound(2.0, 10, 1.5), DomainError);
}
