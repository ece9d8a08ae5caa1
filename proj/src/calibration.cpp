#include "episcreen/calibration.hpp"

#include <cmath>

namespace episcreen {

void CalibrationTargets::validate() const {
    auto bad = [](const char* msg) { throw ValidationError(msg); };
    if (!std::isfinite(s_inf) || !std::isfinite(s0) || !std::isfinite(i0) ||
        !std::isfinite(early_growth))
        bad("calibration targets must be finite");
    if (!(s0 > 0.0) || s0 > 1.0) bad("initial susceptible fraction must lie in (0, 1]");
    if (!(s_inf > 0.0) || !(s_inf < s0))
        bad("final susceptible fraction must lie in (0, s0)");
    if (i0 < 0.0 || s0 + i0 > 1.0 + 1e-12)
        bad("initial infected fraction must be >= 0 with s0 + i0 <= 1");
    if (!(early_growth > 1.0)) bad("early growth factor must exceed 1");
}

double r_naught_from_final_size(const CalibrationTargets& targets) {
    targets.validate();
    const double r0_frac = std::max(0.0, targets.r0());
    const double depletion = (1.0 - targets.s_inf) - r0_frac; // r_inf - r0
    if (!(depletion > 0.0))
        throw NoRootError("final-size relation is degenerate: nobody recovered");

    if (r0_frac == 0.0) {
        // s_inf = s0 * exp(-r_naught * depletion) inverts directly.
        const double r_naught = std::log(targets.s0 / targets.s_inf) / depletion;
        if (!(r_naught > 1.0) || r_naught > 100.0)
            throw NoRootError("final-size relation has no root in (1, 100]");
        return r_naught;
    }

    // f is strictly decreasing in r_naught, so a sign change over (1, 100]
    // brackets the unique root.
    auto f = [&](double r_naught) {
        return targets.s0 * std::exp(-r_naught * depletion) - targets.s_inf;
    };
    double lo = 1.0;
    double hi = 100.0;
    if (!(f(lo) > 0.0) || !(f(hi) < 0.0))
        throw NoRootError("final-size relation has no root in (1, 100]");
    double mid = lo;
    for (int iter = 0; iter < 200; ++iter) {
        mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (std::abs(fm) <= 1e-10 || hi - lo <= 1e-13) return mid;
        if (fm > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return mid;
}

FittedRates fit_rates(const CalibrationTargets& targets) {
    const double r_naught = r_naught_from_final_size(targets);
    const double gamma = std::log(targets.early_growth) / (r_naught - 1.0);
    return {r_naught * gamma, gamma};
}

} // namespace episcreen
