#pragma once

#include "episcreen/core_types.hpp"

namespace episcreen {

/// Result of the prevalence-threshold computation.  `degenerate` is set
/// when specificity == 1: there are no false positives, PPV is 1 at any
/// positive prevalence, and the threshold collapses to 0.
struct PrevalenceThreshold {
    Prevalence value{0.0};
    bool degenerate = false;
};

/// How the serial-testing search picks its target PPV.
struct SerialTestPolicy {
    enum class Target {
        PpvAtThreshold, ///< target = single-test PPV evaluated at the prevalence threshold
        Fixed,          ///< target = fixed_target
    };

    Target target = Target::PpvAtThreshold;
    double fixed_target = 0.0;
    int n_max = 50;

    /// Default policy: reach the PPV attained at the prevalence threshold.
    static SerialTestPolicy at_threshold(int n_max = 50);
    /// Fixed target in (0, 1).
    static SerialTestPolicy fixed(double target, int n_max = 50);
};

/// Positive predictive value of a single application of the test at
/// prevalence `phi` (Bayes' rule).  Throws DegeneratePpvError only in the
/// 0/0 case: phi == 0 together with perfect specificity.
double ppv(const TestCharacteristics& test, Prevalence phi);

/// PPV at `phik` relative to PPV at the baseline prevalence `phi0`
/// (the predictive-value-loss ratio).  Equals ppv(phik)/ppv(phi0) but is
/// computed in a single division so the ratio is exact at phik == phi0.
/// Throws InvalidBaselineError when phi0 == 0.
double zeta(const TestCharacteristics& test, Prevalence phi0, Prevalence phik);

/// Prevalence threshold of the test: the elbow of the PPV-vs-prevalence
/// curve, below which PPV collapses rapidly.  Closed form
/// (sqrt(sensitivity * (1 - specificity)) - (1 - specificity)) / youden_j.
PrevalenceThreshold prevalence_threshold(const TestCharacteristics& test);

/// PPV after `n` consecutive positives, with per-test independence:
/// sensitivity^n and (1 - specificity)^n replace the single-test rates.
/// Requires n >= 1.
double serial_ppv(const TestCharacteristics& test, Prevalence phi, int n);

/// The PPV value the serial-testing search aims for under `policy`.
double serial_test_target(const TestCharacteristics& test,
                          const SerialTestPolicy& policy);

/// Smallest n in [1, policy.n_max] with serial_ppv(test, phi, n) >= target.
/// Throws NotReachableError when phi == 0 (no finite n works) or when the
/// cap is exhausted.
int iterations_to_overcome(const TestCharacteristics& test, Prevalence phi,
                           const SerialTestPolicy& policy);

} // namespace episcreen
