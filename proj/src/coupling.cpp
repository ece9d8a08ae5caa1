#include "episcreen/coupling.hpp"

#include <algorithm>
#include <cmath>

namespace episcreen {

Baseline Baseline::peak() { return {Kind::PeakPrevalence, 0.0}; }

Baseline Baseline::first_sample() { return {Kind::FirstSample, 0.0}; }

Baseline Baseline::explicit_value(double phi0) {
    Prevalence checked(phi0); // range check, [0, 1]
    return {Kind::Explicit, checked.value()};
}

std::vector<TimedPrevalence> prevalence_series(const Trajectory& trajectory,
                                               PrevalenceSource source) {
    const double n = trajectory.params().population();
    std::vector<TimedPrevalence> out;
    out.reserve(trajectory.size());
    for (const SirState& st : trajectory.samples()) {
        double phi = 0.0;
        if (source == PrevalenceSource::InfectedFraction) {
            phi = st.i / n;
        } else {
            // Net new-infection rate as a fraction of the population; negative
            // past the peak, so clamp into the prevalence range.
            phi = derivatives(st, trajectory.params()).di / n;
        }
        phi = std::clamp(phi, 0.0, 1.0);
        out.push_back({st.t, Prevalence(phi)});
    }
    return out;
}

Prevalence resolve_baseline(const std::vector<TimedPrevalence>& series,
                            const Baseline& baseline) {
    if (series.empty()) throw ValidationError("prevalence series is empty");
    double phi0 = 0.0;
    switch (baseline.kind) {
    case Baseline::Kind::PeakPrevalence: {
        phi0 = series.front().phi.value();
        for (const TimedPrevalence& tp : series)
            phi0 = std::max(phi0, tp.phi.value());
        break;
    }
    case Baseline::Kind::FirstSample:
        phi0 = series.front().phi.value();
        break;
    case Baseline::Kind::Explicit:
        phi0 = baseline.value;
        break;
    }
    if (phi0 == 0.0)
        throw InvalidBaselineError(
            "baseline prevalence resolved to zero; ppv ratios are undefined");
    return Prevalence(phi0);
}

ScreeningSeries analyze_series(const std::vector<TimedPrevalence>& series,
                               const TestCharacteristics& test,
                               const Baseline& baseline,
                               const SerialTestPolicy& policy) {
    const Prevalence phi0 = resolve_baseline(series, baseline);
    const PrevalenceThreshold threshold = prevalence_threshold(test);

    ScreeningSeries out;
    out.baseline_phi0 = phi0.value();
    out.rows.reserve(series.size());
    for (const TimedPrevalence& tp : series) {
        ScreeningRow row;
        row.t = tp.t;
        row.phi = tp.phi.value();
        row.pt = threshold.value.value();
        if (tp.phi.value() == 0.0 && test.perfect_specificity()) {
            // ppv is 0/0 here; report the limiting values instead of aborting
            // a whole series for one empty sample.
            row.ppv = 0.0;
            row.zeta = 0.0;
            row.n_iter = 0;
        } else {
            row.ppv = ppv(test, tp.phi);
            row.zeta = zeta(test, phi0, tp.phi);
            row.n_iter = tp.phi.value() == 0.0
                             ? 0
                             : iterations_to_overcome(test, tp.phi, policy);
        }
        out.rows.push_back(row);
    }
    return out;
}

ScreeningSeries analyze(const Trajectory& trajectory,
                        const TestCharacteristics& test,
                        PrevalenceSource source,
                        const Baseline& baseline,
                        const SerialTestPolicy& policy) {
    return analyze_series(prevalence_series(trajectory, source), test, baseline,
                          policy);
}

} // namespace episcreen
