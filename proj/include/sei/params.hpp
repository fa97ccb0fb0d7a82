#ifndef SEI_PARAMS_HPP
#define SEI_PARAMS_HPP

#include "sei/incidence.hpp"
#include "sei/kernels.hpp"

namespace sei {

/// One model scenario: demographic rates, progression rate, age kernels and
/// the incidence function. Immutable after construction.
struct ModelParams {
    double A = 0.0;      // recruitment, individuals/time
    double mu = 0.0;     // natural mortality, 1/time
    double alpha = 0.0;  // exposed -> infectious progression, 1/time
    AgeKernels kernels;
    IncidenceFunction incidence;

    double N_bar() const { return A / mu; }

    void validate() const {
        if (A <= 0.0) throw ConfigError("params: A must be > 0");
        if (mu <= 0.0) throw ConfigError("params: mu must be > 0");
        if (alpha <= 0.0) throw ConfigError("params: alpha must be > 0");
        kernels.validate();
    }
};

} // namespace sei

#endif
