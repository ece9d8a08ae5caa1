#pragma once

#include "episcreen/errors.hpp"

namespace episcreen {

/// Observable targets used to recover SIR rates, all as fractions of the
/// population:
///   - s0, s_inf: susceptible fraction at the start and after the epidemic
///     has run out (0 < s_inf < s0 <= 1);
///   - i0: initially infected fraction (>= 0);
///   - early_growth: weekly multiplicative growth of the infected
///     compartment during the exponential phase (> 1).
struct CalibrationTargets {
    double s_inf = 0.0;
    double s0 = 1.0;
    double i0 = 0.0;
    double early_growth = 2.0;

    /// Initially recovered fraction implied by the other compartments.
    double r0() const { return 1.0 - s0 - i0; }

    /// Throws ValidationError when any field is out of range.
    void validate() const;
};

/// Fitted transmission and recovery rates (per week).
struct FittedRates {
    double beta = 0.0;
    double gamma = 0.0;

    double r_naught() const { return beta / gamma; }
};

/// Solve the final-size relation
///     s_inf = s0 * exp(-r_naught * (r_inf - r0))      (fractions, r_inf = 1 - s_inf)
/// for r_naught.  With r0 == 0 the relation inverts in closed form;
/// otherwise the root is bracketed and bisected on (1, 100].  Throws
/// NoRootError when no admissible root exists (e.g. s_inf too large for
/// an epidemic to have happened).
double r_naught_from_final_size(const CalibrationTargets& targets);

/// Recover (beta, gamma) from the final size and the early growth factor:
/// the linearised early phase grows like exp((beta - gamma) t), so
/// gamma = ln(early_growth) / (r_naught - 1) and beta = r_naught * gamma.
FittedRates fit_rates(const CalibrationTargets& targets);

} // namespace episcreen
