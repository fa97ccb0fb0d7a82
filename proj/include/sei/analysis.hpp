#ifndef SEI_ANALYSIS_HPP
#define SEI_ANALYSIS_HPP

#include "sei/grid.hpp"
#include "sei/params.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace sei {

/// Equilibrium structure of a scenario: R0, the disease-free state, and the
/// endemic state when R0 > 1.
struct EquilibriumReport {
    double R0 = 0.0;
    double K = 0.0;      // int beta e^{-mu a} Gamma(a) da
    double D_bar = 0.0;  // alpha/(mu+alpha) * K
    double N_bar = 0.0;
    std::optional<EndemicPoint> endemic;
    std::array<double, 3> residuals{0.0, 0.0, 0.0};  // relative, eqs of the fixed-point system
    std::string no_endemic_reason;
    int solver_iterations = 0;
    int sign_changes = 0;  // of h(S) on a 1e4-point scan of the bracket
};

/// R0 = alpha/(mu+alpha) * dfdJ(N_bar, 0) * K.
double compute_r0(const ModelParams& params, const Grid& grid);

/// R0, D_bar and (when R0 > 1) the endemic point by bisection on
/// h(S) = f(S, D_bar*(A - mu*S)) - (A - mu*S) over (0, N_bar).
EquilibriumReport analyze_equilibria(const ModelParams& params, const Grid& grid);

/// Sweep of the incidence scale s (k -> s*k): R0(s) and the endemic branch,
/// plus the critical scale where R0 = 1 located by bisection.
struct ThresholdScan {
    std::vector<double> scale, R0, S_star, E_star, J_star;  // NaN entries where absent
    double critical_scale = 0.0;
};

ThresholdScan threshold_scan(const ModelParams& params, double scale_lo, double scale_hi,
                             int n_points, const Grid& grid, int jobs = 1);

} // namespace sei

#endif
