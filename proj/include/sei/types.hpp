#ifndef SEI_TYPES_HPP
#define SEI_TYPES_HPP

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace sei {

using Scalar = double;
using ArrayX = Eigen::ArrayXd;

/// Density of infectious individuals by infection age, sampled at grid nodes.
using AgeProfile = ArrayX;

/// Scenario/grid validation failure (bad input, not a numerical fault).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

/// NaN or other invalid value produced during evaluation.
class EvalError : public std::runtime_error {
public:
    explicit EvalError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Runtime numerical fault (blow-up guard, excessive clamping).
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Positive steady state (S*, E*, J*).
struct EndemicPoint {
    double S = 0.0;
    double E = 0.0;
    double J = 0.0;
};

} // namespace sei

#endif
