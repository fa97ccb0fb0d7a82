#ifndef SEI_INCIDENCE_HPP
#define SEI_INCIDENCE_HPP

#include "sei/types.hpp"

#include <functional>
#include <optional>
#include <string>

namespace sei {

/// Nonlinear incidence f(S, J): new infections per unit time from susceptible
/// density S under force of infection J. Built-in families carry analytic
/// derivatives and Lipschitz bounds; custom evaluators fall back to sampled
/// finite differences.
class IncidenceFunction {
public:
    enum class Family { MassAction, Saturated, HollingII, Custom };
    using Evaluator = std::function<double(double, double)>;

    static IncidenceFunction mass_action(double k);
    static IncidenceFunction saturated(double k, double omega);
    static IncidenceFunction holling_ii(double k, double c);
    static IncidenceFunction custom(Evaluator f, bool declared_concave_in_J,
                                    std::string label = "custom");

    /// f(S, J). Negative arguments are a domain error.
    double operator()(double S, double J) const;

    /// dfdJ(S, 0). Analytic for built-ins; one-sided difference with
    /// Richardson extrapolation for custom evaluators.
    double dfdJ_at_zero(double S) const;

    /// Lipschitz constant valid on the box [0, C]^2 for the inequality
    /// |f(S2,J2)-f(S1,J1)| <= L(|S2-S1|+|J2-J1|).
    double lipschitz(double C) const;

    /// Same family with f multiplied by s (k -> s*k).
    IncidenceFunction scaled(double s) const;

    Family family() const { return family_; }
    bool concave_in_J() const { return concave_; }
    double k() const { return k_; }
    const std::string& label() const { return label_; }

private:
    Family family_ = Family::MassAction;
    double k_ = 0.0;
    double omega_ = 0.0;   // Saturated
    double c_ = 0.0;       // HollingII
    Evaluator eval_;       // Custom
    bool concave_ = true;
    std::string label_;
};

enum class CheckStatus { Pass, PassNonStrict, Fail, Skipped };

const char* to_string(CheckStatus s);

/// Outcome of the structural-hypothesis battery for an incidence function.
struct HypothesisReport {
    CheckStatus vanishes_at_axes = CheckStatus::Skipped;
    CheckStatus monotone_in_S = CheckStatus::Skipped;
    CheckStatus monotone_in_J = CheckStatus::Skipped;
    CheckStatus positive_dfdJ_at_zero = CheckStatus::Skipped;
    CheckStatus concave_in_J = CheckStatus::Skipped;
    CheckStatus sublinearity_s1 = CheckStatus::Skipped;   // ratio bounds at (S*, J*)
    CheckStatus ratio_decreasing = CheckStatus::Skipped;  // f(S,J)/J nonincreasing near N_bar

    /// Basic hypotheses: monotone, vanishing at the axes, positive dfdJ(.,0).
    bool admissible() const;
    /// Extra hypotheses backing the DFE stability theorem.
    bool dfe_theorem_applies() const;
    /// Extra hypotheses backing persistence / endemic stability.
    bool endemic_theorem_applies() const;
};

/// Sampled verification of the structural hypotheses on [0, S_max] x [0, J_max].
/// The ratio-bound check runs only when an endemic point is supplied.
HypothesisReport check_hypotheses(const IncidenceFunction& f, double S_max, double J_max,
                                  std::optional<EndemicPoint> eq = std::nullopt,
                                  unsigned long long seed = 1);

} // namespace sei

#endif
