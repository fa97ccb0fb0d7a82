#ifndef SEI_SIMULATOR_HPP
#define SEI_SIMULATOR_HPP

#include "sei/grid.hpp"
#include "sei/params.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace sei {

/// State of the coupled system at one time level.
struct SimulationState {
    double t = 0.0;
    double S = 0.0;
    double E = 0.0;
    AgeProfile i;
    double J = 0.0;  // cached age_integral(i, beta)
};

/// Initial data: either an age profile i0 (with explicit E0) or an E-history
/// phi on [-a_max, 0] at grid nodes, phi[j] = phi(-j*da). Exactly one of the
/// two must be supplied.
struct InitialData {
    double S0 = 0.0;
    double E0 = 0.0;                  // used with i0; ignored when phi is given
    std::optional<AgeProfile> i0;
    std::optional<ArrayX> phi;
    double R0 = 0.0;                  // removed class, diagnostic only

    /// True when some infection is present (the persistence hypothesis).
    bool seeded() const;
    void validate(const Grid& grid) const;
};

/// Time series recorded at every step (dt spacing), plus optional age-profile
/// snapshots. Full resolution is kept so Lyapunov histories can be rebuilt.
struct Trajectory {
    ArrayX t, S, E, I, R, N, J;
    long clamp_events = 0;
    std::vector<std::pair<double, AgeProfile>> snapshots;

    int n_samples() const { return static_cast<int>(t.size()); }
};

/// Exact characteristic transport over one step: shift by one age node with
/// the multiplicative survival factor, boundary node set to alpha*E at the
/// new time level. Factors are cached for use inside the time loop.
struct TransportOperator {
    ArrayX factor;  // factor[j] maps node j to node j+1
    double alpha = 0.0;

    static TransportOperator build(const ModelParams& params, const Grid& grid);
    AgeProfile apply(const AgeProfile& i, double E_new) const;
};

AgeProfile transport_step(const AgeProfile& i, double E_new, const ModelParams& params,
                          const Grid& grid);

/// One Heun step of the (S, E) subsystem. Negative undershoot is clamped at 0
/// and counted.
std::pair<double, double> ode_step(double S, double E, double J_now, double J_next_est,
                                   const ModelParams& params, double dt, long& clamp_events);

/// i(0, a) = alpha * phi(-a) e^{-mu a} Gamma(a): the profile of a solution
/// whose exposed class followed phi in the past.
AgeProfile history_to_profile(const ArrayX& phi, const ModelParams& params, const Grid& grid);

struct SimulateOptions {
    std::vector<double> snapshot_times;
};

/// Integrates the full system over [0, t_end].
Trajectory simulate(const InitialData& init, const ModelParams& params, const Grid& grid,
                    const SimulateOptions& opts = {});

/// Delay-form integration (J as a convolution of the E-history) used as an
/// independent cross-check of the transport route. Requires phi initial data.
Trajectory simulate_delay(const InitialData& init, const ModelParams& params, const Grid& grid);

} // namespace sei

#endif
