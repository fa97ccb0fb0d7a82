#include "sei/simulator.hpp"

#include <cmath>
#include <string>

namespace sei {

namespace {

constexpr long kMaxClampEvents = 100;
constexpr double kBlowupFactor = 1e3;

void guard_blowup(double t, double S, double E, double J, double N_bar) {
    const double cap = kBlowupFactor * N_bar;
    if (!(S <= cap && E <= cap && J <= cap) || !std::isfinite(S + E + J))
        throw NumericError("simulate: state exceeded 1000*N_bar at t=" + std::to_string(t) +
                           " (check step size / scenario)");
}

double clamp0(double x, long& clamp_events) {
    if (x < 0.0) {
        ++clamp_events;
        if (clamp_events > kMaxClampEvents)
            throw NumericError("simulate: more than 100 negative undershoots; dt too coarse");
        return 0.0;
    }
    return x;
}

} // namespace

bool InitialData::seeded() const {
    if (i0 && (i0->array() > 0.0).any()) return true;
    if (phi && (phi->array() > 0.0).any()) return true;
    return false;
}

void InitialData::validate(const Grid& grid) const {
    if (S0 < 0.0 || E0 < 0.0 || R0 < 0.0)
        throw ConfigError("init: S0, E0, R0 must be >= 0");
    if (i0.has_value() == phi.has_value())
        throw ConfigError("init: exactly one of i0 / phi must be supplied");
    if (i0) {
        if (i0->size() != grid.n_nodes())
            throw ConfigError("init: i0 length does not match grid");
        if ((i0->array() < 0.0).any()) throw ConfigError("init: i0 must be >= 0");
    }
    if (phi) {
        if (phi->size() != grid.n_nodes())
            throw ConfigError("init: phi history must cover [-a_max, 0] at grid nodes");
        if ((phi->array() < 0.0).any()) throw ConfigError("init: phi must be >= 0");
    }
}

TransportOperator TransportOperator::build(const ModelParams& params, const Grid& grid) {
    TransportOperator op;
    op.alpha = params.alpha;
    op.factor.resize(grid.n_age);
    const double decay = std::exp(-params.mu * grid.da);
    for (int j = 0; j < grid.n_age; ++j) {
        const double g0 = params.kernels.survival(grid.age(j));
        const double g1 = params.kernels.survival(grid.age(j + 1));
        op.factor[j] = decay * g1 / g0;
    }
    return op;
}

AgeProfile TransportOperator::apply(const AgeProfile& i, double E_new) const {
    AgeProfile out(i.size());
    out[0] = alpha * E_new;
    for (int j = 0; j < static_cast<int>(factor.size()); ++j)
        out[j + 1] = i[j] * factor[j];
    return out;
}

AgeProfile transport_step(const AgeProfile& i, double E_new, const ModelParams& params,
                          const Grid& grid) {
    if (i.size() != grid.n_nodes())
        throw ConfigError("transport_step: profile length does not match grid");
    return TransportOperator::build(params, grid).apply(i, E_new);
}

std::pair<double, double> ode_step(double S, double E, double J_now, double J_next_est,
                                   const ModelParams& params, double dt, long& clamp_events) {
    const auto& f = params.incidence;
    const double f1 = f(S, J_now);
    if (!std::isfinite(f1)) throw EvalError("ode_step: incidence returned non-finite value");
    const double dS1 = params.A - params.mu * S - f1;
    const double dE1 = f1 - (params.mu + params.alpha) * E;
    const double Sp = std::max(0.0, S + dt * dS1);
    const double Ep = std::max(0.0, E + dt * dE1);
    const double f2 = f(Sp, J_next_est);
    if (!std::isfinite(f2)) throw EvalError("ode_step: incidence returned non-finite value");
    const double dS2 = params.A - params.mu * Sp - f2;
    const double dE2 = f2 - (params.mu + params.alpha) * Ep;
    double S_new = S + 0.5 * dt * (dS1 + dS2);
    double E_new = E + 0.5 * dt * (dE1 + dE2);
    S_new = clamp0(S_new, clamp_events);
    E_new = clamp0(E_new, clamp_events);
    return {S_new, E_new};
}

AgeProfile history_to_profile(const ArrayX& phi, const ModelParams& params, const Grid& grid) {
    if (phi.size() != grid.n_nodes())
        throw ConfigError("history_to_profile: history shorter than a_max");
    AgeProfile i(grid.n_nodes());
    for (int j = 0; j <= grid.n_age; ++j) {
        const double a = grid.age(j);
        i[j] = params.alpha * phi[j] * std::exp(-params.mu * a) * params.kernels.survival(a);
    }
    return i;
}

Trajectory simulate(const InitialData& init, const ModelParams& params, const Grid& grid,
                    const SimulateOptions& opts) {
    params.validate();
    init.validate(grid);

    const auto quad = KernelQuadrature::build(params.kernels, params.mu, grid);
    const auto transport = TransportOperator::build(params, grid);
    const auto& f = params.incidence;
    const double ma = params.mu + params.alpha;
    const double N_bar = params.N_bar();

    double S = init.S0;
    double E = init.phi ? (*init.phi)[0] : init.E0;
    double R = init.R0;
    AgeProfile i = init.i0 ? *init.i0 : history_to_profile(*init.phi, params, grid);

    const int n = grid.n_steps;
    Trajectory traj;
    traj.t.resize(n + 1);
    traj.S.resize(n + 1);
    traj.E.resize(n + 1);
    traj.I.resize(n + 1);
    traj.R.resize(n + 1);
    traj.N.resize(n + 1);
    traj.J.resize(n + 1);

    auto force = [&](const AgeProfile& p) { return (quad.beta_w * p).sum(); };

    // R bookkeeping mirrors the discrete losses of the age integral exactly:
    // each cohort j loses the fraction (1 - factor_j) of its mass per step, of
    // which the recovery share gamma_bar/(mu + gamma_bar) goes to R, and the
    // two nodes shifted past a_max are booked to R in full. This keeps
    // S+E+I+R on the exact relaxation law to second order; an independent
    // quadrature of the recovery flux would leave an O(dt) bias.
    ArrayX rec_w(grid.n_age);
    for (int j = 0; j < grid.n_age; ++j) {
        const double w_next = (j + 1 == grid.n_age) ? 0.5 * grid.da : grid.da;
        const double gamma_bar = (params.kernels.gamma.integral(grid.age(j + 1)) -
                                  params.kernels.gamma.integral(grid.age(j))) /
                                 grid.da;
        const double total = params.mu + gamma_bar;
        const double share = total > 0.0 ? gamma_bar / total : 0.0;
        rec_w[j] = w_next * (1.0 - transport.factor[j]) * share;
    }
    auto recovered_mass = [&](const AgeProfile& p) {
        return (rec_w * p.head(grid.n_age)).sum();
    };
    auto truncated_mass = [&](const AgeProfile& p) {
        return 0.5 * grid.da * (p[grid.n_age - 1] + p[grid.n_age]);
    };

    auto record = [&](int step) {
        const double t = grid.dt * step;
        const double I = (quad.trap * i).sum();
        const double J = force(i);
        traj.t[step] = t;
        traj.S[step] = S;
        traj.E[step] = E;
        traj.I[step] = I;
        traj.R[step] = R;
        traj.N[step] = S + E + I + R;
        traj.J[step] = J;
        for (double ts : opts.snapshot_times)
            if (std::abs(t - ts) < 0.5 * grid.dt) traj.snapshots.emplace_back(t, i);
        guard_blowup(t, S, E, J, N_bar);
    };

    record(0);
    for (int step = 0; step < n; ++step) {
        const double J_now = traj.J[step];
        const double f1 = f(S, J_now);
        if (!std::isfinite(f1))
            throw EvalError("simulate: incidence returned non-finite value at t=" +
                            std::to_string(grid.dt * step));

        // Predictor (Euler) for the new-level boundary value.
        const double dS1 = params.A - params.mu * S - f1;
        const double dE1 = f1 - ma * E;
        const double Sp = std::max(0.0, S + grid.dt * dS1);
        const double Ep = std::max(0.0, E + grid.dt * dE1);

        // Estimate J at the new level by transporting with the predictor boundary.
        const AgeProfile i_est = transport.apply(i, Ep);
        const double J_est = force(i_est);

        // Heun corrector.
        const double f2 = f(Sp, J_est);
        const double dS2 = params.A - params.mu * Sp - f2;
        const double dE2 = f2 - ma * Ep;
        double S_new = S + 0.5 * grid.dt * (dS1 + dS2);
        double E_new = E + 0.5 * grid.dt * (dE1 + dE2);
        S_new = clamp0(S_new, traj.clamp_events);
        E_new = clamp0(E_new, traj.clamp_events);

        // Final transport with the corrected boundary value.
        const AgeProfile i_new = transport.apply(i, E_new);

        // Passive R diagnostic: exact profile losses in, trapezoidal mu out.
        const double gain = recovered_mass(i) + truncated_mass(i);
        const double hm = 0.5 * grid.dt * params.mu;
        const double R_new = (R * (1.0 - hm) + gain) / (1.0 + hm);

        S = S_new;
        E = E_new;
        R = R_new;
        i = i_new;
        record(step + 1);
    }
    return traj;
}

Trajectory simulate_delay(const InitialData& init, const ModelParams& params, const Grid& grid) {
    params.validate();
    init.validate(grid);
    if (!init.phi) throw ConfigError("simulate_delay: phi history initial data required");

    const auto quad = KernelQuadrature::build(params.kernels, params.mu, grid);
    const auto& f = params.incidence;
    const double ma = params.mu + params.alpha;
    const int n = grid.n_steps;
    const int m = grid.n_age;

    // hist[j] = E(t - j*da); independent of the transport route.
    ArrayX hist = *init.phi;
    double S = init.S0;

    auto force_of = [&](const ArrayX& h) {
        return params.alpha * (quad.discounted_w * h).sum();
    };

    Trajectory traj;
    traj.t.resize(n + 1);
    traj.S.resize(n + 1);
    traj.E.resize(n + 1);
    traj.J.resize(n + 1);
    traj.I.resize(0);
    traj.R.resize(0);
    traj.N.resize(0);

    traj.t[0] = 0.0;
    traj.S[0] = S;
    traj.E[0] = hist[0];
    traj.J[0] = force_of(hist);

    for (int step = 0; step < n; ++step) {
        const double E = hist[0];
        const double J_now = traj.J[step];
        const double f1 = f(S, J_now);
        const double dS1 = params.A - params.mu * S - f1;
        const double dE1 = f1 - ma * E;
        const double Sp = std::max(0.0, S + grid.dt * dS1);
        const double Ep = std::max(0.0, E + grid.dt * dE1);

        // Shift the history and place the predictor at lag 0 to estimate J(t+dt).
        ArrayX hist_est(m + 1);
        hist_est[0] = Ep;
        hist_est.segment(1, m) = hist.head(m);
        const double J_est = force_of(hist_est);

        const double f2 = f(Sp, J_est);
        const double dS2 = params.A - params.mu * Sp - f2;
        const double dE2 = f2 - ma * Ep;
        double S_new = S + 0.5 * grid.dt * (dS1 + dS2);
        double E_new = E + 0.5 * grid.dt * (dE1 + dE2);
        S_new = clamp0(S_new, traj.clamp_events);
        E_new = clamp0(E_new, traj.clamp_events);

        hist_est[0] = E_new;
        hist = hist_est;
        S = S_new;
        traj.t[step + 1] = grid.dt * (step + 1);
        traj.S[step + 1] = S;
        traj.E[step + 1] = E_new;
        traj.J[step + 1] = force_of(hist);
        guard_blowup(traj.t[step + 1], S, E_new, traj.J[step + 1], params.N_bar());
    }
    return traj;
}

} // namespace sei
