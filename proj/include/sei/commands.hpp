#ifndef SEI_COMMANDS_HPP
#define SEI_COMMANDS_HPP

#include <functional>
#include <optional>
#include <string>

namespace sei {

/// Sweep request: incidence scale factor over [lo, hi] at n points.
struct SweepSpec {
    double lo = 0.0;
    double hi = 0.0;
    int n = 0;
};

/// Parses "k=lo:hi:n".
SweepSpec parse_sweep_spec(const std::string& text);

int cmd_simulate(const std::string& scenario_path, const std::string& out_dir);
int cmd_analyze(const std::string& scenario_path, const std::string& out_dir,
                const std::optional<SweepSpec>& sweep, int jobs);
int cmd_verify(const std::string& scenario_path, const std::string& out_dir,
               std::optional<unsigned long long> seed_override);
int cmd_sweep(const std::string& scenario_path, const std::string& out_dir,
              const SweepSpec& sweep, int jobs);

/// Maps exceptions to the exit-code taxonomy: 0 ok, 2 config, 3 numeric, 4
/// verification failure.
int run_guarded(const std::function<int()>& body);

void log_info(const std::string& msg);
void log_debug(const std::string& msg);

} // namespace sei

#endif
