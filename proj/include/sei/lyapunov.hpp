#ifndef SEI_LYAPUNOV_HPP
#define SEI_LYAPUNOV_HPP

#include "sei/analysis.hpp"
#include "sei/simulator.hpp"

namespace sei {

/// H(y) = y - ln(y) - 1: convex, zero only at y = 1.
double bump(double y);

/// Adaptive trapezoid on [a, b] to a relative target; used for the eta
/// integrals inside the V1 terms.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double rel_tol = 1e-10);

/// Lyapunov functional certifying DFE stability for R0 <= 1:
/// V = V1(S) + int psi(a) E(t-a) da + E(t).
struct DfeFunctional {
    ArrayX psi;          // psi(a_j), nonincreasing, psi(a_max) = 0
    ArrayX trap;         // trapezoid weights over the lag window
    double c0 = 0.0;     // dfdJ(N_bar, 0)
    double N_bar = 0.0;
    double psi0 = 0.0;   // psi(0) = alpha * c0 * K = R0 * (mu + alpha)

    static DfeFunctional build(const ModelParams& params, const Grid& grid);

    /// V1(S) = S - int_{N_bar}^{S} dfdJ(N_bar,0)/dfdJ(eta,0) d_eta - N_bar.
    double V1(double S, const ModelParams& params) const;

    /// hist[j] = E(t - j*da), j = 0..n_age.
    double eval(double S, const ArrayX& hist, const ModelParams& params) const;
};

/// Lyapunov functional certifying endemic stability:
/// V = V1(S) + int psi(a) H(E(t-a)/E*) da + E* H(E(t)/E*).
struct EndemicFunctional {
    EndemicPoint star;
    double f_star = 0.0;
    ArrayX psi;     // f_star * tail mass of dm
    ArrayX dm_w;    // trapezoid weights of the probability measure dm, sum 1
    ArrayX trap;

    static EndemicFunctional build(const ModelParams& params, const Grid& grid,
                                   const EndemicPoint& eq);

    double V1(double S, const ModelParams& params) const;
    double eval(double S, const ArrayX& hist, const ModelParams& params) const;
};

enum class FunctionalKind { Dfe, Endemic };

/// Forward-difference monotonicity audit of V along a trajectory, after one
/// full history window of burn-in.
struct DescentReport {
    int n_checked = 0;
    int violations = 0;
    double max_step_increase = 0.0;
    double tol = 0.0;
    double V_start = 0.0;  // V at t = a_max
    double V_end = 0.0;
    bool pass = false;
    ArrayX t, V;  // per-sample series from burn-in on
};

DescentReport check_monotone_descent(const Trajectory& traj, FunctionalKind kind,
                                     const ModelParams& params, const Grid& grid);

/// Eventual-bound diagnostics: S+E below N_bar, J below alpha*N_bar*||beta||/mu,
/// S above A/(mu+L), all after a burn-in of max(a_max, t_end/2) with 1e-3 slack.
struct BoundsReport {
    double burn_in = 0.0;
    double max_S_plus_E = 0.0, bound_S_plus_E = 0.0;
    double max_J = 0.0, bound_J = 0.0;
    double min_S = 0.0, bound_min_S = 0.0;
    double lipschitz_L = 0.0;
    bool pass = false;
};

BoundsReport check_bounds(const Trajectory& traj, const ModelParams& params, const Grid& grid);

/// Empirical persistence: post-burn-in minima of E and J, with a non-decay
/// comparison of the last quarter of the horizon.
struct PersistenceReport {
    bool applicable = false;    // R0 > 1 and seeded initial data
    std::string gate_reason;
    double eta_emp = 0.0;       // min E after burn-in
    double delta_bar_emp = 0.0; // min J after burn-in
    double last_quarter_min_E = 0.0;
    double last_quarter_min_J = 0.0;
    bool pass = false;
};

PersistenceReport check_persistence(const Trajectory& traj, const ModelParams& params,
                                    const Grid& grid, double R0, bool seeded);

} // namespace sei

#endif
