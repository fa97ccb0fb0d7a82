#include <doctest.h>

#include "sei/analysis.hpp"

#include "baseline.hpp"

#include <cmath>

using namespace sei;

namespace {

// Independent endemic oracle: damped fixed-point iteration on J with S(J)
// solved from the susceptible balance by inner bisection.
EndemicPoint fixed_point_oracle(const ModelParams& p, double D_bar) {
    auto S_of_J = [&](double J) {
        double lo = 0.0, hi = p.N_bar();
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            const double r = p.A - p.mu * mid - p.incidence(mid, J);
            if (r > 0.0) lo = mid; else hi = mid;
        }
        return 0.5 * (lo + hi);
    };
    double J = 0.5 * D_bar * p.A;
    for (int it = 0; it < 5000; ++it) {
        const double Jn = D_bar * p.incidence(S_of_J(J), J);
        J = 0.5 * (J + Jn);
    }
    const double S = S_of_J(J);
    return {S, (p.A - p.mu * S) / (p.mu + p.alpha), J};
}

} // namespace

TEST_CASE("compute_r0: baseline scenario matches the closed-form pieces") {
    const Grid g = make_grid(50.0, 0.1, 10.0);
    const auto p = baseline_params();
    const double K_exact = (1.0 - std::exp(-6.0)) / 0.12;
    const double r0 = compute_r0(p, g);
    // R0 = alpha/(mu+alpha) * k*N_bar * K
    CHECK(r0 == doctest::Approx(0.2 / 0.22 * 1.0 * K_exact).epsilon(1e-4));
    CHECK(r0 > 1.0);

    auto p0 = baseline_params();
    p0.kernels.beta = AgeRate::constant(0.0);
    CHECK(compute_r0(p0, g) == 0.0);

    // scaling k by 1/R0 normalizes the threshold
    auto pc = p;
    pc.incidence = p.incidence.scaled(1.0 / r0);
    CHECK(compute_r0(pc, g) == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("solve_endemic: mass-action closed form S* = N_bar/R0") {
    const Grid g = make_grid(50.0, 0.1, 10.0);
    const auto p = baseline_params();
    const auto rep = analyze_equilibria(p, g);
    REQUIRE(rep.endemic.has_value());
    CHECK(rep.endemic->S == doctest::Approx(1000.0 / rep.R0).epsilon(1e-9));
    CHECK(rep.endemic->S == doctest::Approx(1.0 / (0.001 * rep.D_bar)).epsilon(1e-9));
    CHECK(rep.endemic->E > 0.0);
    CHECK(rep.endemic->J > 0.0);
    CHECK(rep.endemic->S < 1000.0);
    for (double r : rep.residuals) CHECK(r <= 1e-10);
    CHECK(rep.sign_changes == 1);
    CHECK(rep.D_bar == doctest::Approx(0.2 / 0.22 * rep.K).epsilon(1e-15));
}

TEST_CASE("solve_endemic: absent below threshold with reason") {
    const Grid g = make_grid(50.0, 0.1, 10.0);
    auto p = baseline_params();
    p.incidence = p.incidence.scaled(0.5 / compute_r0(p, g));
    const auto rep = analyze_equilibria(p, g);
    CHECK(rep.R0 == doctest::Approx(0.5).epsilon(1e-12));
    CHECK_FALSE(rep.endemic.has_value());
    CHECK(rep.no_endemic_reason == "R0 <= 1");
}

TEST_CASE("solve_endemic: saturated incidence agrees with fixed-point oracle") {
    const Grid g = make_grid(50.0, 0.1, 10.0);
    auto p = baseline_params();
    p.incidence = IncidenceFunction::saturated(0.001, 0.05);
    const auto rep = analyze_equilibria(p, g);
    REQUIRE(rep.endemic.has_value());
    const auto oracle = fixed_point_oracle(p, rep.D_bar);
    CHECK(rep.endemic->S == doctest::Approx(oracle.S).epsilon(1e-8));
    CHECK(rep.endemic->E == doctest::Approx(oracle.E).epsilon(1e-8));
    CHECK(rep.endemic->J == doctest::Approx(oracle.J).epsilon(1e-8));
}

TEST_CASE("solve_endemic: mass action agrees with fixed-point oracle") {
    const Grid g = make_grid(50.0, 0.1, 10.0);
    const auto p = baseline_params();
    const auto rep = analyze_equilibria(p, g);
    REQUIRE(rep.endemic.has_value());
    const auto oracle = fixed_point_oracle(p, rep.D_bar);
    CHECK(rep.endemic->S == doctest::Approx(oracle.S).epsilon(1e-8));
    CHECK(rep.endemic->J == doctest::Approx(oracle.J).epsilon(1e-8));
}

TEST_CASE("threshold_scan: linear R0, critical scale, transcritical branch") {
    const Grid g = make_grid(50.0, 0.1, 10.0);
    const auto p = baseline_params();
    const double r0_base = compute_r0(p, g);
    const auto scan = threshold_scan(p, 0.0, 0.5, 26, g);

    CHECK(scan.scale.front() == 0.0);
    CHECK(scan.R0.front() == 0.0);
    CHECK(std::isnan(scan.S_star.front()));

    // R0 linear in scale for mass action
    for (size_t i = 0; i < scan.scale.size(); ++i)
        CHECK(scan.R0[i] == doctest::Approx(scan.scale[i] * r0_base).epsilon(1e-12));

    CHECK(scan.critical_scale == doctest::Approx(1.0 / r0_base).epsilon(1e-8));

    // E* increases monotonically above threshold, -> 0 at the critical scale
    double prev = 0.0;
    for (size_t i = 0; i < scan.scale.size(); ++i) {
        if (std::isnan(scan.E_star[i])) continue;
        CHECK(scan.E_star[i] >= prev - 1e-12);
        prev = scan.E_star[i];
    }
    // first endemic point just above threshold has small E*
    for (size_t i = 0; i + 1 < scan.scale.size(); ++i)
        if (std::isnan(scan.E_star[i]) && !std::isnan(scan.E_star[i + 1]))
            CHECK(scan.E_star[i + 1] < 0.12 * p.N_bar());
}

TEST_CASE("threshold_scan: parallel evaluation matches serial") {
    const Grid g = make_grid(50.0, 0.5, 10.0);
    const auto p = baseline_params();
    const auto s1 = threshold_scan(p, 0.05, 0.4, 12, g, 1);
    const auto s4 = threshold_scan(p, 0.05, 0.4, 12, g, 4);
    for (size_t i = 0; i < s1.scale.size(); ++i) {
        CHECK(s1.R0[i] == s4.R0[i]);
        if (!std::isnan(s1.S_star[i])) CHECK(s1.S_star[i] == s4.S_star[i]);
    }
}
