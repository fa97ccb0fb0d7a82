#ifndef SEI_KERNELS_HPP
#define SEI_KERNELS_HPP

#include "sei/types.hpp"

#include <vector>

namespace sei {

/// Nonnegative age-dependent rate a -> r(a) with an exact running integral.
/// Supported representations: constant, piecewise-constant, exponential decay.
struct AgeRate {
    enum class Kind { Constant, Piecewise, ExpDecay };

    Kind kind = Kind::Constant;
    double value = 0.0;               // Constant value / ExpDecay amplitude
    double rate = 0.0;                // ExpDecay exponent
    std::vector<double> breaks;      // Piecewise: interior breakpoints, ascending
    std::vector<double> values;      // Piecewise: values.size() == breaks.size()+1

    static AgeRate constant(double v);
    static AgeRate piecewise(std::vector<double> breaks, std::vector<double> values);
    static AgeRate exp_decay(double amplitude, double decay_rate);

    double operator()(double a) const;

    /// Exact integral over [0, a] (segment sums / closed form, no quadrature).
    double integral(double a) const;

    /// sup over [0, a_max].
    double sup(double a_max) const;

    void validate(const char* name) const;
};

/// Transmission profile beta(a), recovery profile gamma(a), truncation age.
struct AgeKernels {
    AgeRate beta;
    AgeRate gamma;
    double a_max = 0.0;

    /// Survival to infection age a: exp(-int_0^a gamma).
    double survival(double a) const;

    void validate() const;
};

} // namespace sei

#endif
