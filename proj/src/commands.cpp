#include "sei/commands.hpp"

#include "sei/analysis.hpp"
#include "sei/lyapunov.hpp"
#include "sei/scenario.hpp"
#include "sei/svg.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

namespace sei {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

int log_level() {
    const char* v = std::getenv("SEI_LOG");
    if (!v) return 1;
    const std::string s(v);
    if (s == "quiet") return 0;
    if (s == "debug") return 2;
    return 1;
}

std::string fmt10(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw ConfigError("cannot create output directory " + dir);
}

void write_trajectory_csv(const std::string& path, const Trajectory& traj, int sample_every) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open " + path);
    out << "t,S,E,I,R,N,J\n";
    for (int s = 0; s < traj.n_samples(); s += sample_every)
        out << fmt10(traj.t[s]) << ',' << fmt10(traj.S[s]) << ',' << fmt10(traj.E[s]) << ','
            << fmt10(traj.I[s]) << ',' << fmt10(traj.R[s]) << ',' << fmt10(traj.N[s]) << ','
            << fmt10(traj.J[s]) << '\n';
}

void write_snapshots(const std::string& stem, const Trajectory& traj, const Grid& grid) {
    for (const auto& [t, profile] : traj.snapshots) {
        std::ostringstream name;
        name << stem << "_profile_t" << fmt10(t) << ".csv";
        std::ofstream out(name.str());
        if (!out) throw ConfigError("cannot open " + name.str());
        out << "a,i\n";
        for (int j = 0; j < grid.n_nodes(); ++j)
            out << fmt10(grid.age(j)) << ',' << fmt10(profile[j]) << '\n';
    }
}

json endemic_json(const EquilibriumReport& rep) {
    if (!rep.endemic) return nullptr;
    return json{{"S", rep.endemic->S},
                {"E", rep.endemic->E},
                {"J", rep.endemic->J},
                {"residuals", rep.residuals}};
}

json hypothesis_json(const HypothesisReport& h) {
    return json{{"vanishes_at_axes", to_string(h.vanishes_at_axes)},
                {"monotone_in_S", to_string(h.monotone_in_S)},
                {"monotone_in_J", to_string(h.monotone_in_J)},
                {"positive_dfdJ_at_zero", to_string(h.positive_dfdJ_at_zero)},
                {"concave_in_J", to_string(h.concave_in_J)},
                {"sublinearity_s1", to_string(h.sublinearity_s1)},
                {"ratio_decreasing", to_string(h.ratio_decreasing)},
                {"admissible", h.admissible()},
                {"dfe_theorem_applies", h.dfe_theorem_applies()},
                {"endemic_theorem_applies", h.endemic_theorem_applies()}};
}

void write_json(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open " + path);
    out << j.dump(2) << '\n';
}

void write_sweep_csv(const std::string& path, const ThresholdScan& scan) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open " + path);
    out << "scale,R0,S_star,E_star,J_star\n";
    for (size_t i = 0; i < scan.scale.size(); ++i)
        out << fmt10(scan.scale[i]) << ',' << fmt10(scan.R0[i]) << ',' << fmt10(scan.S_star[i])
            << ',' << fmt10(scan.E_star[i]) << ',' << fmt10(scan.J_star[i]) << '\n';
}

} // namespace

void log_info(const std::string& msg) {
    if (log_level() >= 1) std::cerr << "[sei] " << msg << '\n';
}

void log_debug(const std::string& msg) {
    if (log_level() >= 2) std::cerr << "[sei:debug] " << msg << '\n';
}

SweepSpec parse_sweep_spec(const std::string& text) {
    // k=lo:hi:n
    const auto eq = text.find('=');
    if (eq == std::string::npos || text.substr(0, eq) != "k")
        throw ConfigError("sweep spec must look like k=lo:hi:n");
    const std::string rest = text.substr(eq + 1);
    SweepSpec s;
    char colon1 = 0, colon2 = 0;
    std::istringstream in(rest);
    if (!(in >> s.lo >> colon1 >> s.hi >> colon2 >> s.n) || colon1 != ':' || colon2 != ':')
        throw ConfigError("sweep spec must look like k=lo:hi:n");
    if (s.n < 2) throw ConfigError("sweep spec: n must be >= 2");
    return s;
}

int cmd_simulate(const std::string& scenario_path, const std::string& out_dir) {
    const Scenario sc = load_scenario(scenario_path);
    ensure_dir(out_dir);
    SimulateOptions opts;
    opts.snapshot_times = sc.outputs.snapshot_times;
    log_info("simulating to t=" + fmt10(sc.grid.t_end));
    const Trajectory traj = simulate(sc.init, sc.params, sc.grid, opts);
    const std::string stem = out_dir + "/trajectory";
    if (sc.outputs.trajectory)
        write_trajectory_csv(stem + ".csv", traj, sc.outputs.sample_every);
    write_snapshots(stem, traj, sc.grid);
    if (sc.outputs.charts)
        write_line_chart(out_dir + "/timeseries.svg", "Trajectory", "t", traj.t,
                         {{"S", traj.S}, {"E", traj.E}, {"I", traj.I}, {"J", traj.J}});
    log_info("wrote " + stem + ".csv");
    return 0;
}

int cmd_analyze(const std::string& scenario_path, const std::string& out_dir,
                const std::optional<SweepSpec>& sweep, int jobs) {
    const Scenario sc = load_scenario(scenario_path);
    ensure_dir(out_dir);
    const auto rep = analyze_equilibria(sc.params, sc.grid);
    json out{{"R0", rep.R0},
             {"K", rep.K},
             {"D_bar", rep.D_bar},
             {"N_bar", rep.N_bar},
             {"endemic", endemic_json(rep)},
             {"solver_iterations", rep.solver_iterations},
             {"sign_changes", rep.sign_changes}};
    if (!rep.endemic) out["no_endemic_reason"] = rep.no_endemic_reason;
    if (sweep) {
        const auto scan = threshold_scan(sc.params, sweep->lo, sweep->hi, sweep->n, sc.grid, jobs);
        write_sweep_csv(out_dir + "/sweep.csv", scan);
        out["critical_scale"] = scan.critical_scale;
    }
    write_json(out_dir + "/report.json", out);
    log_info("R0 = " + fmt10(rep.R0));
    return 0;
}

int cmd_sweep(const std::string& scenario_path, const std::string& out_dir,
              const SweepSpec& sweep, int jobs) {
    return cmd_analyze(scenario_path, out_dir, sweep, jobs);
}

int cmd_verify(const std::string& scenario_path, const std::string& out_dir,
               std::optional<unsigned long long> seed_override) {
    const Scenario sc = load_scenario(scenario_path);
    ensure_dir(out_dir);
    const unsigned long long seed = seed_override.value_or(sc.seed);

    const auto eq = analyze_equilibria(sc.params, sc.grid);
    const double N_bar = sc.params.N_bar();
    const double J_box = sc.params.alpha * N_bar *
                         sc.params.kernels.beta.sup(sc.grid.a_max) / sc.params.mu;
    const auto hyp = check_hypotheses(sc.params.incidence, N_bar, std::max(J_box, 1.0),
                                      eq.endemic, seed == 0 ? 1 : seed);

    log_info("simulating for verification, R0 = " + fmt10(eq.R0));
    const Trajectory traj = simulate(sc.init, sc.params, sc.grid);
    const auto bounds = check_bounds(traj, sc.params, sc.grid);
    const auto persistence =
        check_persistence(traj, sc.params, sc.grid, eq.R0, sc.init.seeded());

    json verdicts;
    bool any_fail = !bounds.pass;
    verdicts["bounds"] = bounds.pass ? "pass" : "fail";

    json descent_block = nullptr;
    std::optional<DescentReport> descent;
    if (eq.R0 <= 1.0) {
        verdicts["persistence"] = "skipped: R0 <= 1";
        verdicts["endemic_stability"] = "skipped: R0 <= 1";
        if (hyp.dfe_theorem_applies()) {
            descent = check_monotone_descent(traj, FunctionalKind::Dfe, sc.params, sc.grid);
            verdicts["dfe_stability"] = descent->pass ? "pass" : "fail";
            if (!descent->pass) any_fail = true;
        } else {
            verdicts["dfe_stability"] = "skipped: hypothesis not satisfied (f not concave in J)";
        }
    } else {
        verdicts["dfe_stability"] = "skipped: R0 > 1";
        if (persistence.applicable) {
            verdicts["persistence"] = persistence.pass ? "pass" : "fail";
            if (!persistence.pass) any_fail = true;
        } else {
            verdicts["persistence"] = "skipped: " + persistence.gate_reason;
        }
        if (hyp.endemic_theorem_applies() && eq.endemic && persistence.applicable) {
            descent = check_monotone_descent(traj, FunctionalKind::Endemic, sc.params, sc.grid);
            verdicts["endemic_stability"] = descent->pass ? "pass" : "fail";
            if (!descent->pass) any_fail = true;
        } else if (!hyp.endemic_theorem_applies()) {
            verdicts["endemic_stability"] = "skipped: not covered by theorem (hypothesis failed)";
        } else {
            verdicts["endemic_stability"] = "skipped: " + persistence.gate_reason;
        }
    }

    if (descent) {
        descent_block = json{{"n_checked", descent->n_checked},
                             {"violations", descent->violations},
                             {"max_step_increase", descent->max_step_increase},
                             {"tol", descent->tol},
                             {"V_start", descent->V_start},
                             {"V_end", descent->V_end},
                             {"pass", descent->pass}};
        std::ofstream out(out_dir + "/descent.csv");
        out << "t,V,dV\n";
        for (int i = 0; i < descent->V.size(); ++i) {
            const double dv = i ? descent->V[i] - descent->V[i - 1] : 0.0;
            out << fmt10(descent->t[i]) << ',' << fmt10(descent->V[i]) << ',' << fmt10(dv)
                << '\n';
        }
    }

    json report{
        {"scenario", scenario_path},
        {"seed", seed},
        {"R0", eq.R0},
        {"equilibrium",
         {{"R0", eq.R0},
          {"K", eq.K},
          {"D_bar", eq.D_bar},
          {"N_bar", eq.N_bar},
          {"endemic", endemic_json(eq)}}},
        {"hypotheses", hypothesis_json(hyp)},
        {"bounds",
         {{"pass", bounds.pass},
          {"burn_in", bounds.burn_in},
          {"max_S_plus_E", bounds.max_S_plus_E},
          {"bound_S_plus_E", bounds.bound_S_plus_E},
          {"max_J", bounds.max_J},
          {"bound_J", bounds.bound_J},
          {"min_S", bounds.min_S},
          {"bound_min_S", bounds.bound_min_S},
          {"lipschitz_L", bounds.lipschitz_L}}},
        {"persistence",
         {{"applicable", persistence.applicable},
          {"gate_reason", persistence.gate_reason},
          {"eta_emp", persistence.eta_emp},
          {"delta_bar_emp", persistence.delta_bar_emp},
          {"last_quarter_min_E", persistence.last_quarter_min_E},
          {"last_quarter_min_J", persistence.last_quarter_min_J},
          {"pass", persistence.pass}}},
        {"descent", descent_block},
        {"verdicts", verdicts},
        {"clamp_events", traj.clamp_events}};
    write_json(out_dir + "/verification.json", report);
    log_info(std::string("verification ") + (any_fail ? "FAILED" : "passed"));
    return any_fail ? 4 : 0;
}

int run_guarded(const std::function<int()>& body) {
    try {
        return body();
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const NumericError& e) {
        std::cerr << "numeric error: " << e.what() << '\n';
        return 3;
    } catch (const EvalError& e) {
        std::cerr << "numeric error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}

} // namespace sei
