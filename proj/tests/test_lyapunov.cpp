#include <doctest.h>

#include "sei/lyapunov.hpp"

#include "baseline.hpp"

#include <cmath>
#include <random>

using namespace sei;

TEST_CASE("bump function H") {
    CHECK(bump(1.0) == 0.0);
    CHECK(bump(2.0) == doctest::Approx(1.0 - std::log(2.0)).epsilon(1e-14));
    CHECK_THROWS_AS(bump(0.0), DomainError);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.01, 100.0);
    for (int i = 0; i < 2000; ++i) {
        const double y = u(rng);
        if (std::abs(y - 1.0) > 1e-9) CHECK(bump(y) > 0.0);
        const double a = u(rng), b = u(rng);
        CHECK(bump(0.5 * (a + b)) <= 0.5 * (bump(a) + bump(b)) + 1e-12);
    }
}

TEST_CASE("psi(0) identity: psi(0) = (mu+alpha) * R0") {
    const Grid g = make_grid(50.0, 0.1, 10.0);
    const auto p = baseline_params();
    const auto fn = DfeFunctional::build(p, g);
    const double r0 = compute_r0(p, g);
    CHECK(fn.psi0 == doctest::Approx((p.mu + p.alpha) * r0).epsilon(1e-10));
    // psi nonincreasing, zero tail
    for (int j = 1; j < fn.psi.size(); ++j) CHECK(fn.psi[j] <= fn.psi[j - 1] + 1e-15);
    CHECK(fn.psi[fn.psi.size() - 1] == 0.0);
}

TEST_CASE("dm is a probability measure") {
    const Grid g = make_grid(50.0, 0.1, 10.0);
    const auto p = baseline_params();
    const auto rep = analyze_equilibria(p, g);
    REQUIRE(rep.endemic.has_value());
    const auto fn = EndemicFunctional::build(p, g, *rep.endemic);
    CHECK(fn.dm_w.sum() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK((fn.dm_w >= 0.0).all());
}

TEST_CASE("DFE functional: zero at the DFE, closed-form V1, positive elsewhere") {
    const Grid g = make_grid(50.0, 0.1, 10.0);
    const auto p = baseline_params();
    const auto fn = DfeFunctional::build(p, g);

    const ArrayX zero_hist = ArrayX::Zero(g.n_nodes());
    CHECK(fn.eval(1000.0, zero_hist, p) == doctest::Approx(0.0).epsilon(1e-12));

    // mass action: V1(S) = S - N ln(S/N) - N; at S = N/2 this is N(ln2 - 1/2)
    CHECK(fn.eval(500.0, zero_hist, p) ==
          doctest::Approx(1000.0 * (std::log(2.0) - 0.5)).epsilon(1e-12));

    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        const double S = 1.0 + 1500.0 * u(rng);
        ArrayX hist(g.n_nodes());
        for (int j = 0; j < g.n_nodes(); ++j) hist[j] = 100.0 * u(rng);
        if (std::abs(S - 1000.0) < 1.0) continue;
        CHECK(fn.eval(S, hist, p) > 0.0);
    }
    CHECK_THROWS_AS(fn.V1(0.0, p), DomainError);
}

TEST_CASE("DFE V1: generic adaptive path matches closed forms") {
    const Grid g = make_grid(50.0, 0.1, 10.0);

    // holling_ii runs the generic path; compare with its antiderivative
    auto p = baseline_params();
    p.incidence = IncidenceFunction::holling_ii(0.001, 0.003);
    const auto fn = DfeFunctional::build(p, g);
    const double c0 = p.incidence.dfdJ_at_zero(1000.0);
    auto v1_exact = [&](double S) {
        const double c = 0.003, k = 0.001;
        return S - (c0 / k) * (std::log(S / 1000.0) + c * (S - 1000.0)) - 1000.0;
    };
    for (double S : {100.0, 400.0, 999.0, 1500.0})
        CHECK(fn.V1(S, p) == doctest::Approx(v1_exact(S)).epsilon(1e-8));

    // custom mass action runs adaptive + finite differences; compare with log form
    auto pc = baseline_params();
    pc.incidence = IncidenceFunction::custom(
        [](double S, double J) { return 0.001 * S * J; }, true);
    const auto fnc = DfeFunctional::build(pc, g);
    for (double S : {250.0, 900.0})
        CHECK(fnc.V1(S, pc) ==
              doctest::Approx(S - 1000.0 * std::log(S / 1000.0) - 1000.0).epsilon(1e-7));
}

TEST_CASE("endemic functional: zero at equilibrium, doubled history value") {
    const Grid g = make_grid(50.0, 0.1, 10.0);
    const auto p = baseline_params();
    const auto rep = analyze_equilibria(p, g);
    REQUIRE(rep.endemic.has_value());
    const auto eq = *rep.endemic;
    const auto fn = EndemicFunctional::build(p, g, eq);

    const ArrayX eq_hist = ArrayX::Constant(g.n_nodes(), eq.E);
    CHECK(fn.eval(eq.S, eq_hist, p) == doctest::Approx(0.0).epsilon(1e-10));

    // history == 2E*, S = S*: V = f* H(2) <mean age of dm> + E* H(2);
    // mean age of the truncated exponential dm from its closed form
    const double lam = 0.12;
    const double T = 50.0;
    const double mean_dm = (1.0 - std::exp(-lam * T) * (1.0 + lam * T)) / (lam * lam) /
                           ((1.0 - std::exp(-lam * T)) / lam);
    const double H2 = bump(2.0);
    const double expected = fn.f_star * H2 * mean_dm + eq.E * H2;
    CHECK(fn.eval(eq.S, ArrayX::Constant(g.n_nodes(), 2.0 * eq.E), p) ==
          doctest::Approx(expected).epsilon(1e-3));

    // nonpositive history entry names the lag
    ArrayX bad = eq_hist;
    bad[17] = 0.0;
    CHECK_THROWS_WITH_AS(fn.eval(eq.S, bad, p),
                         doctest::Contains("lag 17"), DomainError);
}

TEST_CASE("endemic V1: mass action ratio integrand is S*/eta") {
    const Grid g = make_grid(50.0, 0.1, 10.0);
    const auto p = baseline_params();
    const auto rep = analyze_equilibria(p, g);
    REQUIRE(rep.endemic.has_value());
    const auto fn = EndemicFunctional::build(p, g, *rep.endemic);
    const double Ss = rep.endemic->S;
    for (double S : {50.0, 200.0, 800.0})
        CHECK(fn.V1(S, p) ==
              doctest::Approx(S - Ss * std::log(S / Ss) - Ss).epsilon(1e-12));
}

TEST_CASE("Jensen consistency of dm on random positive histories") {
    const Grid g = make_grid(50.0, 0.1, 10.0);
    const auto p = baseline_params();
    const auto rep = analyze_equilibria(p, g);
    REQUIRE(rep.endemic.has_value());
    const auto fn = EndemicFunctional::build(p, g, *rep.endemic);

    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(0.05, 5.0);
    for (int trial = 0; trial < 1000; ++trial) {
        ArrayX ratio(g.n_nodes());
        for (int j = 0; j < g.n_nodes(); ++j) ratio[j] = u(rng);
        double lhs = 0.0;
        for (int j = 0; j < g.n_nodes(); ++j) lhs += fn.dm_w[j] * bump(ratio[j]);
        const double rhs = bump((fn.dm_w * ratio).sum());
        CHECK(lhs >= rhs - 1e-12);
    }
}

TEST_CASE("descent: constant equilibrium trajectory has zero increments") {
    const auto p = baseline_params();
    const Grid g = make_grid(50.0, 0.1, 120.0);
    const auto rep = analyze_equilibria(p, g);
    REQUIRE(rep.endemic.has_value());
    InitialData init;
    init.S0 = rep.endemic->S;
    init.phi = ArrayX::Constant(g.n_nodes(), rep.endemic->E);
    const Trajectory traj = simulate(init, p, g);
    const auto d = check_monotone_descent(traj, FunctionalKind::Endemic, p, g);
    CHECK(d.violations == 0);
    CHECK(std::abs(d.max_step_increase) <= 1e-9);
    CHECK(d.pass);
}

TEST_CASE("descent: subcritical run with the DFE functional") {
    auto p = baseline_params();
    const Grid g = make_grid(50.0, 0.1, 300.0);
    p.incidence = p.incidence.scaled(0.9 / compute_r0(p, g));
    InitialData init;
    init.S0 = 500.0;
    init.phi = ArrayX::Constant(g.n_nodes(), 20.0);
    const Trajectory traj = simulate(init, p, g);
    const auto d = check_monotone_descent(traj, FunctionalKind::Dfe, p, g);
    CHECK(d.violations == 0);
    CHECK(d.V_end < d.V_start);
}

TEST_CASE("descent: insufficient history is a configuration error") {
    const auto p = baseline_params();
    const Grid g = make_grid(50.0, 0.1, 30.0);  // shorter than a_max
    InitialData init;
    init.S0 = 500.0;
    init.i0 = AgeProfile::Zero(g.n_nodes());
    const Trajectory traj = simulate(init, p, g);
    CHECK_THROWS_AS(check_monotone_descent(traj, FunctionalKind::Dfe, p, g), ConfigError);
}

TEST_CASE("bounds: disease-free and inflated initial conditions pass after burn-in") {
    const auto p = baseline_params();
    InitialData init;
    init.S0 = 200.0;
    {
        const Grid g = make_grid(50.0, 0.1, 400.0);
        init.i0 = AgeProfile::Zero(g.n_nodes());
        const auto b = check_bounds(simulate(init, p, g), p, g);
        CHECK(b.pass);
        CHECK(b.bound_S_plus_E == doctest::Approx(1000.0 * 1.001));
    }
    {
        // inflated start needs time to relax under the eventual bound
        const Grid g = make_grid(50.0, 0.1, 900.0);
        init.S0 = 5000.0;  // 5 * N_bar
        init.i0 = AgeProfile::Zero(g.n_nodes());
        const auto b = check_bounds(simulate(init, p, g), p, g);
        CHECK(b.pass);
    }
}

TEST_CASE("persistence gates") {
    const auto p = baseline_params();
    const Grid g = make_grid(50.0, 0.1, 200.0);
    InitialData init;
    init.S0 = 900.0;
    init.i0 = AgeProfile::Zero(g.n_nodes());
    const Trajectory traj = simulate(init, p, g);

    auto rep = check_persistence(traj, p, g, 0.8, true);
    CHECK_FALSE(rep.applicable);
    CHECK(rep.gate_reason == "R0 <= 1");

    rep = check_persistence(traj, p, g, 7.5, false);
    CHECK_FALSE(rep.applicable);
    CHECK(rep.gate_reason == "disease-free subspace");
}

TEST_CASE("integrate_adaptive: log integrand to 1e-10") {
    const double v = integrate_adaptive([](double x) { return 1.0 / x; }, 1.0, 7.0);
    CHECK(v == doctest::Approx(std::log(7.0)).epsilon(1e-10));
}
