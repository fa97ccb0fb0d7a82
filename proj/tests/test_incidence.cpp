#include <doctest.h>

#include "sei/incidence.hpp"

#include <cmath>
#include <random>

using namespace sei;

TEST_CASE("built-in families evaluate to the closed forms") {
    auto ma = IncidenceFunction::mass_action(0.001);
    CHECK(ma(500.0, 10.0) == doctest::Approx(5.0).epsilon(1e-14));
    CHECK(ma(500.0, 0.0) == 0.0);
    CHECK(ma(0.0, 10.0) == 0.0);

    auto sat = IncidenceFunction::saturated(0.001, 0.1);
    CHECK(sat(500.0, 10.0) == doctest::Approx(2.5).epsilon(1e-14));
    CHECK(sat(500.0, 0.0) == 0.0);

    auto hol = IncidenceFunction::holling_ii(0.001, 0.01);
    CHECK(hol(500.0, 10.0) == doctest::Approx(0.001 * 500.0 * 10.0 / 6.0).epsilon(1e-14));

    CHECK_THROWS_AS(ma(-1.0, 1.0), DomainError);
    CHECK_THROWS_AS(ma(1.0, -1.0), DomainError);
}

TEST_CASE("dfdJ at zero: analytic values") {
    CHECK(IncidenceFunction::mass_action(0.001).dfdJ_at_zero(1000.0) ==
          doctest::Approx(1.0).epsilon(1e-14));
    CHECK(IncidenceFunction::saturated(0.001, 0.1).dfdJ_at_zero(1000.0) ==
          doctest::Approx(1.0).epsilon(1e-14));
    CHECK(IncidenceFunction::holling_ii(0.001, 0.01).dfdJ_at_zero(1000.0) ==
          doctest::Approx(1.0 / 11.0).epsilon(1e-14));
}

TEST_CASE("dfdJ at zero: finite-difference path matches analytic built-ins") {
    // Same formulas routed through a custom evaluator.
    auto sat_fd = IncidenceFunction::custom(
        [](double S, double J) { return 0.001 * S * J / (1.0 + 0.1 * J); }, true);
    for (double S : {1.0, 100.0, 1000.0})
        CHECK(sat_fd.dfdJ_at_zero(S) == doctest::Approx(0.001 * S).epsilon(1e-8));

    auto quad = IncidenceFunction::custom(
        [](double S, double J) { return 0.001 * S * J * J; }, false);
    CHECK(quad.dfdJ_at_zero(1000.0) == doctest::Approx(0.0).epsilon(1e-8));
}

TEST_CASE("lipschitz bounds") {
    CHECK(IncidenceFunction::mass_action(0.001).lipschitz(1000.0) ==
          doctest::Approx(1.0).epsilon(1e-14));
    CHECK(IncidenceFunction::mass_action(0.5).lipschitz(0.0) == 0.0);
    CHECK(IncidenceFunction::saturated(0.001, 0.1).lipschitz(1000.0) ==
          doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("lipschitz bound certifies the inequality on random samples") {
    auto fns = {IncidenceFunction::mass_action(0.001),
                IncidenceFunction::saturated(0.001, 0.1),
                IncidenceFunction::holling_ii(0.002, 0.005)};
    const double C = 1000.0;
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, C);
    for (const auto& f : fns) {
        const double L = f.lipschitz(C);
        for (int i = 0; i < 10000; ++i) {
            const double S1 = u(rng), S2 = u(rng), J1 = u(rng), J2 = u(rng);
            const double lhs = std::abs(f(S2, J2) - f(S1, J1));
            CHECK(lhs <= L * (std::abs(S2 - S1) + std::abs(J2 - J1)) + 1e-9);
        }
    }
}

TEST_CASE("monotonicity and vanishing axes on sampled grid") {
    auto fns = {IncidenceFunction::mass_action(0.001),
                IncidenceFunction::saturated(0.001, 0.1),
                IncidenceFunction::holling_ii(0.002, 0.005)};
    for (const auto& f : fns) {
        for (int i = 0; i <= 20; ++i) {
            const double S = 1000.0 * i / 20, J = 500.0 * i / 20;
            CHECK(f(S, 0.0) == 0.0);
            CHECK(f(0.0, J) == 0.0);
        }
        for (int i = 1; i <= 20; ++i)
            for (int j = 1; j < 20; ++j) {
                const double S = 1000.0 * i / 20;
                CHECK(f(S, 500.0 * (j + 1) / 20) > f(S, 500.0 * j / 20));
                CHECK(f(1000.0 * (j + 1) / 20, 500.0 * i / 20) >
                      f(1000.0 * j / 20, 500.0 * i / 20));
            }
    }
}

TEST_CASE("chord concavity for declared-concave families") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    auto fns = {IncidenceFunction::mass_action(0.001),
                IncidenceFunction::saturated(0.001, 0.1),
                IncidenceFunction::holling_ii(0.002, 0.005)};
    for (const auto& f : fns)
        for (int i = 0; i < 1000; ++i) {
            const double S = 1.0 + 999.0 * u(rng);
            const double J1 = 500.0 * u(rng), J2 = 500.0 * u(rng);
            CHECK(f(S, 0.5 * (J1 + J2)) >= 0.5 * (f(S, J1) + f(S, J2)) - 1e-9);
        }
}

TEST_CASE("hypothesis battery: mass action and saturated pass, kSJ^2 fails") {
    EndemicPoint eq{132.0, 79.0, 131.0};

    auto rep_ma = check_hypotheses(IncidenceFunction::mass_action(0.001), 1000.0, 500.0, eq);
    CHECK(rep_ma.admissible());
    CHECK(rep_ma.concave_in_J == CheckStatus::Pass);
    // linear in J: the ratio bound holds with equality, not strictly
    CHECK(rep_ma.sublinearity_s1 == CheckStatus::PassNonStrict);
    CHECK(rep_ma.ratio_decreasing == CheckStatus::Pass);
    CHECK(rep_ma.dfe_theorem_applies());
    CHECK(rep_ma.endemic_theorem_applies());

    auto rep_sat = check_hypotheses(IncidenceFunction::saturated(0.001, 0.1), 1000.0, 500.0, eq);
    CHECK(rep_sat.admissible());
    CHECK(rep_sat.sublinearity_s1 == CheckStatus::Pass);
    CHECK(rep_sat.endemic_theorem_applies());

    auto quad = IncidenceFunction::custom(
        [](double S, double J) { return 0.001 * S * J * J; }, false);
    auto rep_q = check_hypotheses(quad, 1000.0, 500.0, eq);
    CHECK(rep_q.concave_in_J == CheckStatus::Fail);
    CHECK(rep_q.ratio_decreasing == CheckStatus::Fail);
    CHECK(rep_q.positive_dfdJ_at_zero == CheckStatus::Fail);
    CHECK_FALSE(rep_q.admissible());
    CHECK_FALSE(rep_q.dfe_theorem_applies());
    CHECK_FALSE(rep_q.endemic_theorem_applies());
}

TEST_CASE("scaled incidence multiplies f") {
    auto f = IncidenceFunction::saturated(0.001, 0.1);
    auto g = f.scaled(2.0);
    CHECK(g(500.0, 10.0) == doctest::Approx(2.0 * f(500.0, 10.0)).epsilon(1e-14));
}
