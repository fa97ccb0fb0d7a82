#include "sei/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace sei {

AgeRate AgeRate::constant(double v) {
    AgeRate r;
    r.kind = Kind::Constant;
    r.value = v;
    r.validate("rate");
    return r;
}

AgeRate AgeRate::piecewise(std::vector<double> breaks, std::vector<double> values) {
    AgeRate r;
    r.kind = Kind::Piecewise;
    r.breaks = std::move(breaks);
    r.values = std::move(values);
    r.validate("rate");
    return r;
}

AgeRate AgeRate::exp_decay(double amplitude, double decay_rate) {
    AgeRate r;
    r.kind = Kind::ExpDecay;
    r.value = amplitude;
    r.rate = decay_rate;
    r.validate("rate");
    return r;
}

void AgeRate::validate(const char* name) const {
    const std::string n(name);
    switch (kind) {
    case Kind::Constant:
        if (value < 0.0) throw ConfigError(n + ": constant value must be >= 0");
        break;
    case Kind::ExpDecay:
        if (value < 0.0) throw ConfigError(n + ": exp_decay amplitude must be >= 0");
        if (rate < 0.0) throw ConfigError(n + ": exp_decay rate must be >= 0");
        break;
    case Kind::Piecewise:
        if (values.size() != breaks.size() + 1)
            throw ConfigError(n + ": piecewise needs values.size() == breaks.size()+1");
        if (!std::is_sorted(breaks.begin(), breaks.end()))
            throw ConfigError(n + ": piecewise breaks must be ascending");
        for (double b : breaks)
            if (b <= 0.0) throw ConfigError(n + ": piecewise breaks must be > 0");
        for (double v : values)
            if (v < 0.0) throw ConfigError(n + ": piecewise values must be >= 0");
        break;
    }
}

double AgeRate::operator()(double a) const {
    switch (kind) {
    case Kind::Constant:
        return value;
    case Kind::ExpDecay:
        return value * std::exp(-rate * a);
    case Kind::Piecewise: {
        auto it = std::upper_bound(breaks.begin(), breaks.end(), a);
        return values[static_cast<size_t>(it - breaks.begin())];
    }
    }
    return 0.0;
}

double AgeRate::integral(double a) const {
    if (a <= 0.0) return 0.0;
    switch (kind) {
    case Kind::Constant:
        return value * a;
    case Kind::ExpDecay:
        if (rate == 0.0) return value * a;
        return value * (1.0 - std::exp(-rate * a)) / rate;
    case Kind::Piecewise: {
        double acc = 0.0;
        double left = 0.0;
        for (size_t s = 0; s < breaks.size(); ++s) {
            const double right = breaks[s];
            if (a <= right) return acc + values[s] * (a - left);
            acc += values[s] * (right - left);
            left = right;
        }
        return acc + values.back() * (a - left);
    }
    }
    return 0.0;
}

double AgeRate::sup(double a_max) const {
    switch (kind) {
    case Kind::Constant:
        return value;
    case Kind::ExpDecay:
        return value;
    case Kind::Piecewise: {
        double m = 0.0;
        double left = 0.0;
        for (size_t s = 0; s < values.size(); ++s) {
            if (left > a_max) break;
            m = std::max(m, values[s]);
            left = (s < breaks.size()) ? breaks[s] : a_max;
        }
        return m;
    }
    }
    return 0.0;
}

double AgeKernels::survival(double a) const {
    if (a < 0.0 || a > a_max) throw DomainError("survival: age outside [0, a_max]");
    return std::exp(-gamma.integral(a));
}

void AgeKernels::validate() const {
    beta.validate("beta");
    gamma.validate("gamma");
    if (a_max <= 0.0) throw ConfigError("a_max must be > 0");
}

} // namespace sei
