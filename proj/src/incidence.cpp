#include "sei/incidence.hpp"

#include <cmath>
#include <random>
#include <utility>
#include <vector>

namespace sei {

IncidenceFunction IncidenceFunction::mass_action(double k) {
    if (k < 0.0) throw ConfigError("mass_action: k must be >= 0");
    IncidenceFunction f;
    f.family_ = Family::MassAction;
    f.k_ = k;
    f.concave_ = true;
    f.label_ = "mass_action";
    return f;
}

IncidenceFunction IncidenceFunction::saturated(double k, double omega) {
    if (k < 0.0 || omega < 0.0) throw ConfigError("saturated: k, omega must be >= 0");
    IncidenceFunction f;
    f.family_ = Family::Saturated;
    f.k_ = k;
    f.omega_ = omega;
    f.concave_ = true;
    f.label_ = "saturated";
    return f;
}

IncidenceFunction IncidenceFunction::holling_ii(double k, double c) {
    if (k < 0.0 || c < 0.0) throw ConfigError("holling_ii: k, c must be >= 0");
    IncidenceFunction f;
    f.family_ = Family::HollingII;
    f.k_ = k;
    f.c_ = c;
    f.concave_ = true;
    f.label_ = "holling_ii_s";
    return f;
}

IncidenceFunction IncidenceFunction::custom(Evaluator f, bool declared_concave_in_J,
                                            std::string label) {
    if (!f) throw ConfigError("custom incidence: evaluator must be callable");
    IncidenceFunction g;
    g.family_ = Family::Custom;
    g.eval_ = std::move(f);
    g.concave_ = declared_concave_in_J;
    g.label_ = std::move(label);
    return g;
}

double IncidenceFunction::operator()(double S, double J) const {
    if (S < 0.0 || J < 0.0) throw DomainError("incidence: S and J must be >= 0");
    switch (family_) {
    case Family::MassAction:
        return k_ * S * J;
    case Family::Saturated:
        return k_ * S * J / (1.0 + omega_ * J);
    case Family::HollingII:
        return k_ * S * J / (1.0 + c_ * S);
    case Family::Custom: {
        const double v = eval_(S, J);
        if (!std::isfinite(v)) throw EvalError("incidence: custom evaluator returned non-finite value");
        return v;
    }
    }
    return 0.0;
}

double IncidenceFunction::dfdJ_at_zero(double S) const {
    if (S < 0.0) throw DomainError("dfdJ_at_zero: S must be >= 0");
    switch (family_) {
    case Family::MassAction:
    case Family::Saturated:
        return k_ * S;
    case Family::HollingII:
        return k_ * S / (1.0 + c_ * S);
    case Family::Custom:
        break;
    }
    // One-sided difference D(h) = f(S,h)/h, using f(S,0)=0, with Richardson
    // extrapolation over halved steps.
    const int levels = 6;
    double h = 1e-2;
    std::vector<double> row(levels);
    for (int i = 0; i < levels; ++i, h *= 0.5) {
        const double v = (*this)(S, h);
        if (!std::isfinite(v)) throw EvalError("dfdJ_at_zero: evaluator returned non-finite value");
        double cur = v / h;
        for (int j = 0; j < i; ++j) {
            const double p = std::pow(2.0, j + 1);
            const double next = (p * cur - row[j]) / (p - 1.0);
            row[j] = cur;
            cur = next;
        }
        row[i] = cur;
    }
    return row[levels - 1];
}

double IncidenceFunction::lipschitz(double C) const {
    if (C < 0.0) throw DomainError("lipschitz: box bound must be >= 0");
    if (C == 0.0) return 0.0;
    switch (family_) {
    case Family::MassAction:
    case Family::Saturated:
    case Family::HollingII:
        // For all three families sup|df/dJ| on the box is attained at
        // (S, J) = (C, 0) and dominates sup|df/dS|; both are <= k*C.
        return k_ * C;
    case Family::Custom:
        break;
    }
    // Sampled gradient sup on a refined grid, with a safety factor for
    // suprema the grid may miss.
    const int n = 128;
    const double h = C * 1e-6;
    double sup = 0.0;
    for (int is = 0; is <= n; ++is) {
        const double S = C * is / n;
        for (int ij = 0; ij <= n; ++ij) {
            const double J = C * ij / n;
            const double Sp = std::min(S + h, C), Sm = std::max(S - h, 0.0);
            const double Jp = std::min(J + h, C), Jm = std::max(J - h, 0.0);
            const double dS = ((*this)(Sp, J) - (*this)(Sm, J)) / (Sp - Sm);
            const double dJ = ((*this)(S, Jp) - (*this)(S, Jm)) / (Jp - Jm);
            sup = std::max({sup, std::abs(dS), std::abs(dJ)});
        }
    }
    return 1.1 * sup;
}

IncidenceFunction IncidenceFunction::scaled(double s) const {
    if (s < 0.0) throw ConfigError("scaled: factor must be >= 0");
    IncidenceFunction g(*this);
    switch (family_) {
    case Family::MassAction:
    case Family::Saturated:
    case Family::HollingII:
        g.k_ = k_ * s;
        return g;
    case Family::Custom: {
        auto base = eval_;
        g.eval_ = [base, s](double S, double J) { return s * base(S, J); };
        return g;
    }
    }
    return g;
}

const char* to_string(CheckStatus s) {
    switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::PassNonStrict: return "pass_non_strict";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Skipped: return "skipped";
    }
    return "?";
}

bool HypothesisReport::admissible() const {
    auto ok = [](CheckStatus s) { return s == CheckStatus::Pass || s == CheckStatus::PassNonStrict; };
    return ok(vanishes_at_axes) && ok(monotone_in_S) && ok(monotone_in_J) &&
           positive_dfdJ_at_zero == CheckStatus::Pass;
}

bool HypothesisReport::dfe_theorem_applies() const {
    return admissible() && concave_in_J == CheckStatus::Pass;
}

bool HypothesisReport::endemic_theorem_applies() const {
    if (!admissible() || ratio_decreasing == CheckStatus::Fail) return false;
    if (sublinearity_s1 == CheckStatus::Pass || sublinearity_s1 == CheckStatus::PassNonStrict)
        return true;
    // No endemic point supplied: concavity implies the ratio bounds.
    return sublinearity_s1 == CheckStatus::Skipped && concave_in_J == CheckStatus::Pass;
}

HypothesisReport check_hypotheses(const IncidenceFunction& f, double S_max, double J_max,
                                  std::optional<EndemicPoint> eq, unsigned long long seed) {
    HypothesisReport rep;
    const int n = 32;
    const double fscale = std::max(1e-300, std::abs(f(S_max, J_max)));
    const double tol = 1e-9 * fscale;

    // Vanishing on the axes.
    {
        bool ok = true;
        for (int i = 0; i <= n; ++i) {
            const double s = S_max * i / n;
            const double j = J_max * i / n;
            if (std::abs(f(s, 0.0)) > tol || std::abs(f(0.0, j)) > tol) ok = false;
        }
        rep.vanishes_at_axes = ok ? CheckStatus::Pass : CheckStatus::Fail;
    }

    // Strict monotonicity on the interior grid.
    {
        bool fail_S = false, strict_S = true;
        bool fail_J = false, strict_J = true;
        for (int i = 1; i <= n; ++i) {
            for (int j = 1; j < n; ++j) {
                const double S = S_max * i / n;
                const double J = J_max * i / n;
                const double dJ = f(S, J_max * (j + 1) / n) - f(S, J_max * j / n);
                const double dS = f(S_max * (j + 1) / n, J) - f(S_max * j / n, J);
                if (dJ < -tol) fail_J = true;
                else if (dJ <= tol) strict_J = false;
                if (dS < -tol) fail_S = true;
                else if (dS <= tol) strict_S = false;
            }
        }
        rep.monotone_in_J = fail_J ? CheckStatus::Fail
                                   : (strict_J ? CheckStatus::Pass : CheckStatus::PassNonStrict);
        rep.monotone_in_S = fail_S ? CheckStatus::Fail
                                   : (strict_S ? CheckStatus::Pass : CheckStatus::PassNonStrict);
    }

    // dfdJ(., 0) must be positive on compact sets.
    {
        bool ok = true;
        for (int i = 1; i <= n; ++i) {
            const double S = S_max * i / n;
            if (f.dfdJ_at_zero(S) <= 1e-12 * fscale / std::max(J_max, 1e-300)) ok = false;
        }
        rep.positive_dfdJ_at_zero = ok ? CheckStatus::Pass : CheckStatus::Fail;
    }

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);

    // Concavity in J: midpoint chord inequality plus subhomogeneity
    // f(S, lam*J) >= lam*f(S, J), sampled.
    {
        bool ok = true;
        for (int trial = 0; trial < 2000; ++trial) {
            const double S = S_max * (0.01 + 0.99 * u01(rng));
            const double J1 = J_max * u01(rng);
            const double J2 = J_max * u01(rng);
            const double lam = u01(rng);
            if (f(S, 0.5 * (J1 + J2)) < 0.5 * (f(S, J1) + f(S, J2)) - tol) ok = false;
            if (f(S, lam * J1) < lam * f(S, J1) - tol) ok = false;
        }
        rep.concave_in_J = ok ? CheckStatus::Pass : CheckStatus::Fail;
    }

    // Ratio bounds x/J* < f(S,x)/f(S,J*) < 1 for x < J* (mirrored for x > J*),
    // sampled around a supplied endemic point.
    if (eq && eq->J > 0.0) {
        const double Js = eq->J;
        bool fail = false, strict = true;
        const double rtol = 1e-9;
        for (int trial = 0; trial < 2000; ++trial) {
            const double S = S_max * (0.01 + 0.99 * u01(rng));
            const double fs = f(S, Js);
            if (fs <= 0.0) continue;
            // below J*
            double x = Js * (0.01 + 0.98 * u01(rng));
            double r = f(S, x) / fs;
            double lo = x / Js;
            if (r < lo - rtol || r > 1.0 + rtol) fail = true;
            else if (r < lo + rtol || r > 1.0 - rtol) strict = false;
            // above J*, if the box allows
            if (J_max > Js * 1.01) {
                x = Js + (J_max - Js) * (0.01 + 0.98 * u01(rng));
                r = f(S, x) / fs;
                const double hi = x / Js;
                if (r > hi + rtol || r < 1.0 - rtol) fail = true;
                else if (r > hi - rtol || r < 1.0 + rtol) strict = false;
            }
        }
        rep.sublinearity_s1 = fail ? CheckStatus::Fail
                                   : (strict ? CheckStatus::Pass : CheckStatus::PassNonStrict);
    }

    // f(S,J)/J nonincreasing in J for small J, S near the top of the box.
    {
        bool ok = true;
        const double eta = 0.01 * J_max;
        for (int trial = 0; trial < 2000; ++trial) {
            const double S = S_max * (0.95 + 0.1 * u01(rng));
            double J1 = eta * (0.001 + 0.999 * u01(rng));
            double J2 = eta * (0.001 + 0.999 * u01(rng));
            if (J1 > J2) std::swap(J1, J2);
            if (J1 == J2) continue;
            if (f(S, J1) / J1 < f(S, J2) / J2 - tol / J1) ok = false;
        }
        rep.ratio_decreasing = ok ? CheckStatus::Pass : CheckStatus::Fail;
    }

    return rep;
}

} // namespace sei
