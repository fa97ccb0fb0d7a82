#include "sei/commands.hpp"

#include <CLI11.hpp>

int main(int argc, char** argv) {
    CLI::App app{"Infection-age SEI model: simulation, equilibrium analysis and "
                 "stability verification"};
    app.require_subcommand(1);

    std::string scenario;
    std::string out_dir = ".";
    int jobs = 1;
    unsigned long long seed = 0;
    bool seed_set = false;
    std::string sweep_text;

    auto add_common = [&](CLI::App* cmd, bool need_scenario = true) {
        if (need_scenario)
            cmd->add_option("scenario", scenario, "Scenario JSON file")->required();
        cmd->add_option("--out", out_dir, "Output directory");
        cmd->add_option("--jobs", jobs, "Parallel workers for sweeps");
        cmd->add_option("--seed", seed, "Seed for randomized sampling")
            ->each([&](const std::string&) { seed_set = true; });
    };

    auto* sim = app.add_subcommand("simulate", "Integrate the model and write trajectory CSV");
    add_common(sim);

    auto* ana = app.add_subcommand("analyze", "R0, equilibria and optional threshold sweep");
    add_common(ana);
    ana->add_option("--sweep", sweep_text, "Sweep spec k=lo:hi:n");

    auto* ver = app.add_subcommand("verify", "Run the full theorem-verification battery");
    add_common(ver);

    auto* swp = app.add_subcommand("sweep", "Threshold sweep of the incidence scale");
    add_common(swp);
    swp->add_option("--range", sweep_text, "Sweep spec k=lo:hi:n")->required();

    CLI11_PARSE(app, argc, argv);

    return sei::run_guarded([&]() -> int {
        if (sim->parsed()) return sei::cmd_simulate(scenario, out_dir);
        if (ana->parsed()) {
            std::optional<sei::SweepSpec> sw;
            if (!sweep_text.empty()) sw = sei::parse_sweep_spec(sweep_text);
            return sei::cmd_analyze(scenario, out_dir, sw, jobs);
        }
        if (ver->parsed()) {
            std::optional<unsigned long long> s;
            if (seed_set) s = seed;
            return sei::cmd_verify(scenario, out_dir, s);
        }
        if (swp->parsed())
            return sei::cmd_sweep(scenario, out_dir, sei::parse_sweep_spec(sweep_text), jobs);
        return 2;
    });
}
