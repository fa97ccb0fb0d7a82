#include "sei/scenario.hpp"

#include <cmath>
#include <fstream>
#include <json.hpp>
#include <sstream>

namespace sei {

namespace {

using nlohmann::json;

double require_number(const json& j, const std::string& key) {
    if (!j.contains(key)) throw ConfigError("scenario: missing key \"" + key + "\"");
    if (!j[key].is_number()) throw ConfigError("scenario: key \"" + key + "\" must be a number");
    return j[key].get<double>();
}

double number_or(const json& j, const std::string& key, double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number()) throw ConfigError("scenario: key \"" + key + "\" must be a number");
    return j[key].get<double>();
}

std::vector<double> require_array(const json& j, const std::string& key) {
    if (!j.contains(key) || !j[key].is_array())
        throw ConfigError("scenario: key \"" + key + "\" must be an array of numbers");
    std::vector<double> out;
    for (const auto& v : j[key]) {
        if (!v.is_number()) throw ConfigError("scenario: key \"" + key + "\" must be numeric");
        out.push_back(v.get<double>());
    }
    return out;
}

AgeRate parse_rate(const json& j, const std::string& name) {
    if (!j.is_object() || !j.contains("kind"))
        throw ConfigError("scenario: \"" + name + "\" must be an object with \"kind\"");
    const std::string kind = j["kind"].get<std::string>();
    if (kind == "constant") return AgeRate::constant(require_number(j, "value"));
    if (kind == "piecewise")
        return AgeRate::piecewise(require_array(j, "breaks"), require_array(j, "values"));
    if (kind == "exp_decay")
        return AgeRate::exp_decay(require_number(j, "value"), require_number(j, "rate"));
    throw ConfigError("scenario: \"" + name + "\" has unknown kind \"" + kind + "\"");
}

IncidenceFunction parse_incidence(const json& j) {
    if (!j.is_object() || !j.contains("family"))
        throw ConfigError("scenario: \"incidence\" must be an object with \"family\"");
    const std::string fam = j["family"].get<std::string>();
    const double k = require_number(j, "k");
    if (fam == "mass_action") return IncidenceFunction::mass_action(k);
    if (fam == "saturated") return IncidenceFunction::saturated(k, require_number(j, "omega"));
    if (fam == "holling_ii_s") return IncidenceFunction::holling_ii(k, require_number(j, "c"));
    if (fam == "power") {
        const double p = require_number(j, "p");
        if (p <= 0.0) throw ConfigError("scenario: incidence power \"p\" must be > 0");
        return IncidenceFunction::custom(
            [k, p](double S, double J) { return k * S * std::pow(J, p); }, p <= 1.0, "power");
    }
    throw ConfigError("scenario: unknown incidence family \"" + fam + "\"");
}

ArrayX parse_profile(const json& j, const Grid& grid, const std::string& name) {
    if (!j.is_object() || !j.contains("kind"))
        throw ConfigError("scenario: \"" + name + "\" must be an object with \"kind\"");
    const std::string kind = j["kind"].get<std::string>();
    ArrayX v = ArrayX::Zero(grid.n_nodes());
    if (kind == "zero") return v;
    if (kind == "constant") {
        v.setConstant(require_number(j, "value"));
        return v;
    }
    if (kind == "point") {
        const double age = require_number(j, "age");
        const int node = static_cast<int>(std::round(age / grid.da));
        if (node < 0 || node > grid.n_age)
            throw ConfigError("scenario: \"" + name + "\" point age outside [0, a_max]");
        v[node] = require_number(j, "value");
        return v;
    }
    if (kind == "values") {
        const auto vals = require_array(j, "values");
        if (static_cast<int>(vals.size()) != grid.n_nodes())
            throw ConfigError("scenario: \"" + name + "\" values length must be n_age+1");
        for (int i = 0; i < grid.n_nodes(); ++i) v[i] = vals[static_cast<size_t>(i)];
        return v;
    }
    throw ConfigError("scenario: \"" + name + "\" has unknown kind \"" + kind + "\"");
}

} // namespace

Scenario parse_scenario(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("scenario: JSON parse error: ") + e.what());
    }

    Scenario sc;
    sc.params.A = require_number(j, "A");
    sc.params.mu = require_number(j, "mu");
    sc.params.alpha = require_number(j, "alpha");
    if (!j.contains("incidence")) throw ConfigError("scenario: missing key \"incidence\"");
    sc.params.incidence = parse_incidence(j["incidence"]);
    if (!j.contains("beta")) throw ConfigError("scenario: missing key \"beta\"");
    if (!j.contains("gamma")) throw ConfigError("scenario: missing key \"gamma\"");
    sc.params.kernels.beta = parse_rate(j["beta"], "beta");
    sc.params.kernels.gamma = parse_rate(j["gamma"], "gamma");
    sc.params.kernels.a_max = require_number(j, "a_max");
    sc.params.validate();

    sc.grid = make_grid(sc.params.kernels.a_max, require_number(j, "da"),
                        require_number(j, "t_end"));

    if (!j.contains("init") || !j["init"].is_object())
        throw ConfigError("scenario: missing object \"init\"");
    const auto& ji = j["init"];
    sc.init.S0 = require_number(ji, "S0");
    sc.init.E0 = number_or(ji, "E0", 0.0);
    sc.init.R0 = number_or(ji, "R0", 0.0);
    const bool has_i0 = ji.contains("i0");
    const bool has_phi = ji.contains("phi");
    if (has_i0 == has_phi)
        throw ConfigError("scenario: \"init\" must contain exactly one of \"i0\" / \"phi\"");
    if (has_i0) sc.init.i0 = parse_profile(ji["i0"], sc.grid, "i0");
    if (has_phi) sc.init.phi = parse_profile(ji["phi"], sc.grid, "phi");
    sc.init.validate(sc.grid);

    if (j.contains("outputs")) {
        const auto& jo = j["outputs"];
        if (!jo.is_object()) throw ConfigError("scenario: \"outputs\" must be an object");
        sc.outputs.trajectory = jo.value("trajectory", true);
        sc.outputs.sample_every = jo.value("sample_every", 1);
        if (sc.outputs.sample_every < 1)
            throw ConfigError("scenario: \"sample_every\" must be >= 1");
        if (jo.contains("snapshots")) sc.outputs.snapshot_times = require_array(jo, "snapshots");
        sc.outputs.charts = jo.value("charts", false);
    }
    sc.seed = j.value("seed", 0ULL);
    return sc;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("scenario: cannot open file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_scenario(ss.str());
}

} // namespace sei
