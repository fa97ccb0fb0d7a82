#include "sei/grid.hpp"

#include <cmath>

namespace sei {

Grid make_grid(double a_max, double da, double t_end) {
    if (a_max <= 0.0 || da <= 0.0 || t_end <= 0.0)
        throw ConfigError("make_grid: a_max, da, t_end must be > 0");
    if (da > a_max / 10.0)
        throw ConfigError("make_grid: da must be <= a_max/10");
    const double ratio = a_max / da;
    const double n = std::round(ratio);
    if (std::abs(ratio - n) > 1e-9 * ratio)
        throw ConfigError("make_grid: da does not divide a_max");
    Grid g;
    g.da = da;
    g.dt = da;
    g.n_age = static_cast<int>(n);
    g.a_max = a_max;
    g.t_end = t_end;
    g.n_steps = static_cast<int>(std::ceil(t_end / g.dt - 1e-9));
    return g;
}

double age_integral(const AgeProfile& profile, const std::function<double(double)>& weight,
                    const Grid& grid) {
    if (profile.size() != grid.n_nodes())
        throw ConfigError("age_integral: profile length does not match grid");
    double acc = 0.0;
    for (int j = 0; j <= grid.n_age; ++j) {
        const double v = profile[j] * weight(grid.age(j));
        if (!std::isfinite(v)) throw EvalError("age_integral: non-finite integrand");
        const double w = (j == 0 || j == grid.n_age) ? 0.5 : 1.0;
        acc += w * v;
    }
    return acc * grid.da;
}

KernelQuadrature KernelQuadrature::build(const AgeKernels& kernels, double mu, const Grid& grid) {
    KernelQuadrature q;
    const int n = grid.n_nodes();
    q.trap = ArrayX::Constant(n, grid.da);
    q.trap[0] *= 0.5;
    q.trap[n - 1] *= 0.5;
    q.beta_vals.resize(n);
    q.gamma_vals.resize(n);
    q.survival_vals.resize(n);
    q.discounted.resize(n);
    for (int j = 0; j < n; ++j) {
        const double a = grid.age(j);
        q.beta_vals[j] = kernels.beta(a);
        q.gamma_vals[j] = kernels.gamma(a);
        q.survival_vals[j] = kernels.survival(a);
        q.discounted[j] = q.beta_vals[j] * std::exp(-mu * a) * q.survival_vals[j];
    }
    q.beta_w = q.trap * q.beta_vals;
    q.gamma_w = q.trap * q.gamma_vals;
    q.discounted_w = q.trap * q.discounted;
    q.K = q.discounted_w.sum();
    return q;
}

double discounted_kernel_moment(const AgeKernels& kernels, double mu, const Grid& grid) {
    return KernelQuadrature::build(kernels, mu, grid).K;
}

} // namespace sei
