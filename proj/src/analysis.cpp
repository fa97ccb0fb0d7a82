#include "sei/analysis.hpp"

#include <cmath>
#include <future>
#include <limits>

namespace sei {

double compute_r0(const ModelParams& params, const Grid& grid) {
    params.validate();
    const double K = discounted_kernel_moment(params.kernels, params.mu, grid);
    const double c = params.incidence.dfdJ_at_zero(params.N_bar());
    return params.alpha / (params.mu + params.alpha) * c * K;
}

namespace {

double endemic_h(const ModelParams& params, double D_bar, double S) {
    const double g = params.A - params.mu * S;  // = f(S*, J*) at a root
    return params.incidence(S, D_bar * g) - g;
}

} // namespace

EquilibriumReport analyze_equilibria(const ModelParams& params, const Grid& grid) {
    params.validate();
    EquilibriumReport rep;
    rep.N_bar = params.N_bar();
    rep.K = discounted_kernel_moment(params.kernels, params.mu, grid);
    rep.D_bar = params.alpha / (params.mu + params.alpha) * rep.K;
    rep.R0 = rep.D_bar * params.incidence.dfdJ_at_zero(rep.N_bar);

    if (rep.R0 <= 1.0) {
        rep.no_endemic_reason = "R0 <= 1";
        return rep;
    }

    const double C = std::max(rep.N_bar, rep.D_bar * params.A);
    const double L = params.incidence.lipschitz(C);
    const double S_lo = 1e-3 * params.A / (params.mu + L);
    const double S_hi = rep.N_bar * (1.0 - 1e-9);

    double h_lo = endemic_h(params, rep.D_bar, S_lo);
    double h_hi = endemic_h(params, rep.D_bar, S_hi);
    if (!(h_lo < 0.0 && h_hi > 0.0)) {
        rep.no_endemic_reason = "no bracket: h does not change sign on (0, N_bar)";
        return rep;
    }

    // Scan for multiple roots; the solver does not assume uniqueness.
    {
        const int n_scan = 10000;
        double prev = h_lo;
        for (int i = 1; i <= n_scan; ++i) {
            const double S = S_lo + (S_hi - S_lo) * i / n_scan;
            const double h = endemic_h(params, rep.D_bar, S);
            if ((prev < 0.0 && h >= 0.0) || (prev >= 0.0 && h < 0.0)) ++rep.sign_changes;
            prev = h;
        }
    }

    double lo = S_lo, hi = S_hi;
    const double width_tol = 1e-12 * rep.N_bar;
    while (hi - lo > width_tol) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;  // representable limit
        const double h = endemic_h(params, rep.D_bar, mid);
        ++rep.solver_iterations;
        if (h < 0.0) lo = mid; else hi = mid;
    }

    EndemicPoint eq;
    eq.S = 0.5 * (lo + hi);
    const double g = params.A - params.mu * eq.S;
    eq.E = g / (params.mu + params.alpha);
    eq.J = rep.D_bar * g;

    const double f_star = params.incidence(eq.S, eq.J);
    rep.residuals[0] = std::abs(params.A - params.mu * eq.S - f_star) / params.A;
    rep.residuals[1] = std::abs((params.mu + params.alpha) * eq.E - f_star) /
                       std::max(f_star, std::numeric_limits<double>::min());
    rep.residuals[2] = std::abs(eq.J - params.alpha * eq.E * rep.K) /
                       std::max(eq.J, std::numeric_limits<double>::min());
    for (double r : rep.residuals)
        if (!(r <= 1e-10))
            throw NumericError("solve_endemic: fixed-point residual exceeds 1e-10");

    rep.endemic = eq;
    return rep;
}

ThresholdScan threshold_scan(const ModelParams& params, double scale_lo, double scale_hi,
                             int n_points, const Grid& grid, int jobs) {
    if (!(scale_lo >= 0.0 && scale_hi > scale_lo))
        throw ConfigError("threshold_scan: need 0 <= scale_lo < scale_hi");
    if (n_points < 2) throw ConfigError("threshold_scan: need at least 2 points");

    ThresholdScan scan;
    scan.scale.resize(n_points);
    scan.R0.resize(n_points);
    scan.S_star.resize(n_points);
    scan.E_star.resize(n_points);
    scan.J_star.resize(n_points);

    auto at = [&](int idx) {
        const double s = scale_lo + (scale_hi - scale_lo) * idx / (n_points - 1);
        ModelParams p = params;
        p.incidence = params.incidence.scaled(s);
        const auto rep = analyze_equilibria(p, grid);
        scan.scale[idx] = s;
        scan.R0[idx] = rep.R0;
        const double nan = std::numeric_limits<double>::quiet_NaN();
        scan.S_star[idx] = rep.endemic ? rep.endemic->S : nan;
        scan.E_star[idx] = rep.endemic ? rep.endemic->E : nan;
        scan.J_star[idx] = rep.endemic ? rep.endemic->J : nan;
    };

    if (jobs <= 1) {
        for (int i = 0; i < n_points; ++i) at(i);
    } else {
        std::vector<std::future<void>> futs;
        for (int w = 0; w < jobs; ++w)
            futs.push_back(std::async(std::launch::async, [&, w] {
                for (int i = w; i < n_points; i += jobs) at(i);
            }));
        for (auto& fu : futs) fu.get();
    }

    // Critical scale: R0(s) is increasing in s; bisect R0(s) = 1.
    auto r0_at = [&](double s) {
        ModelParams p = params;
        p.incidence = params.incidence.scaled(s);
        return compute_r0(p, grid);
    };
    double lo = scale_lo, hi = scale_hi;
    if (r0_at(lo) >= 1.0 || r0_at(hi) <= 1.0) {
        scan.critical_scale = std::numeric_limits<double>::quiet_NaN();
    } else {
        while (hi - lo > 1e-13 * hi) {
            const double mid = 0.5 * (lo + hi);
            if (r0_at(mid) < 1.0) lo = mid; else hi = mid;
        }
        scan.critical_scale = 0.5 * (lo + hi);
    }
    return scan;
}

} // namespace sei
