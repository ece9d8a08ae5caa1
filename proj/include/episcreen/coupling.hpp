#pragma once

#include <vector>

#include "episcreen/core_types.hpp"
#include "episcreen/screening.hpp"
#include "episcreen/sir_integrator.hpp"

namespace episcreen {

/// What the screening analysis treats as "prevalence" at each sample.
enum class PrevalenceSource {
    InfectedFraction, ///< i / population (default)
    IncidenceRate,    ///< new infections net of recoveries, clamped to [0, 1]
};

/// How the baseline prevalence phi0 (denominator of the ppv ratio) is chosen.
struct Baseline {
    enum class Kind {
        PeakPrevalence, ///< prevalence at the trajectory's infected peak (default)
        FirstSample,    ///< prevalence of the first sample
        Explicit,       ///< a caller-supplied value
    };

    Kind kind = Kind::PeakPrevalence;
    double value = 0.0; ///< only meaningful for Kind::Explicit

    static Baseline peak();
    static Baseline first_sample();
    static Baseline explicit_value(double phi0);
};

/// A prevalence observation at a point in time.
struct TimedPrevalence {
    double t = 0.0;
    Prevalence phi{0.0};
};

/// One analyzed sample: prevalence, the constant threshold, and the three
/// screening quantities evaluated at that prevalence.  n_iter == 0 is a
/// sentinel for "prevalence is zero, no repeat count applies".
struct ScreeningRow {
    double t = 0.0;
    double phi = 0.0;
    double pt = 0.0;
    double ppv = 0.0;
    double zeta = 0.0;
    int n_iter = 0;
};

/// The full screening analysis of a prevalence series.
struct ScreeningSeries {
    std::vector<ScreeningRow> rows;
    double baseline_phi0 = 0.0;
};

/// Extract the per-sample prevalence from a trajectory under `source`.
std::vector<TimedPrevalence> prevalence_series(const Trajectory& trajectory,
                                               PrevalenceSource source);

/// Resolve the baseline prevalence for `series` under `baseline`.
/// PeakPrevalence picks the series' maximum (first occurrence on ties).
/// Throws ValidationError on an empty series and InvalidBaselineError when
/// the resolved baseline is zero.
Prevalence resolve_baseline(const std::vector<TimedPrevalence>& series,
                            const Baseline& baseline);

/// Run the screening analysis over an explicit prevalence series.
ScreeningSeries analyze_series(const std::vector<TimedPrevalence>& series,
                               const TestCharacteristics& test,
                               const Baseline& baseline,
                               const SerialTestPolicy& policy);

/// Convenience: prevalence_series + analyze_series.
ScreeningSeries analyze(const Trajectory& trajectory,
                        const TestCharacteristics& test,
                        PrevalenceSource source,
                        const Baseline& baseline,
                        const SerialTestPolicy& policy);

} // namespace episcreen
