#ifndef SEI_GRID_HPP
#define SEI_GRID_HPP

#include "sei/kernels.hpp"
#include "sei/types.hpp"

#include <functional>

namespace sei {

/// Age/time grid with dt = da so transport along characteristics is exact.
struct Grid {
    double da = 0.0;
    double dt = 0.0;       // == da
    int n_age = 0;         // nodes 0..n_age at ages j*da, n_age*da == a_max
    double a_max = 0.0;
    double t_end = 0.0;
    int n_steps = 0;       // time steps of size dt covering [0, t_end]

    double age(int j) const { return da * j; }
    int n_nodes() const { return n_age + 1; }
};

/// Builds an aligned grid; rejects non-divisible da (no silent rounding) and
/// resolutions coarser than a_max/10.
Grid make_grid(double a_max, double da, double t_end);

/// Composite trapezoid of weight(a)*profile(a) over [0, a_max].
double age_integral(const AgeProfile& profile, const std::function<double(double)>& weight,
                    const Grid& grid);

/// Node values and quadrature weights cached once per (kernels, mu, grid).
struct KernelQuadrature {
    ArrayX trap;          // plain trapezoid weights, sum == a_max
    ArrayX beta_vals;     // beta(a_j)
    ArrayX gamma_vals;    // gamma(a_j)
    ArrayX survival_vals; // Gamma(a_j)
    ArrayX discounted;    // beta(a_j) e^{-mu a_j} Gamma(a_j)
    ArrayX beta_w;        // trap * beta
    ArrayX gamma_w;       // trap * gamma
    ArrayX discounted_w;  // trap * discounted
    double K = 0.0;       // sum(discounted_w) = int beta e^{-mu a} Gamma(a) da

    static KernelQuadrature build(const AgeKernels& kernels, double mu, const Grid& grid);
};

/// K = int_0^{a_max} beta(a) e^{-mu a} Gamma(a) da by composite trapezoid.
double discounted_kernel_moment(const AgeKernels& kernels, double mu, const Grid& grid);

} // namespace sei

#endif
