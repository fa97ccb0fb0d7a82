#ifndef SEI_SCENARIO_HPP
#define SEI_SCENARIO_HPP

#include "sei/params.hpp"
#include "sei/simulator.hpp"

#include <string>
#include <vector>

namespace sei {

/// Output requests attached to a scenario file.
struct OutputSpec {
    bool trajectory = true;
    int sample_every = 1;
    std::vector<double> snapshot_times;
    bool charts = false;
};

/// Fully resolved scenario: model parameters, grid, initial data, outputs.
struct Scenario {
    ModelParams params;
    Grid grid;
    InitialData init;
    OutputSpec outputs;
    unsigned long long seed = 0;
};

/// Parses and validates a scenario JSON file. Errors name the offending key.
Scenario load_scenario(const std::string& path);
Scenario parse_scenario(const std::string& json_text);

} // namespace sei

#endif
