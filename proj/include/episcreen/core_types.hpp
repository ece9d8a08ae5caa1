#pragma once

#include <vector>

#include "episcreen/errors.hpp"

namespace episcreen {

/// Sensitivity/specificity pair of a screening test.
///
/// Both probabilities must lie in (0, 1] and their Youden index
/// J = sensitivity + specificity - 1 must be positive: a test that is no
/// better than chance has no meaningful predictive value and is rejected
/// at construction.
class TestCharacteristics {
public:
    TestCharacteristics(double sensitivity, double specificity);

    double sensitivity() const { return sensitivity_; }
    double specificity() const { return specificity_; }

    /// Youden index J = sensitivity + specificity - 1, in (0, 1].
    double youden_j() const { return sensitivity_ + specificity_ - 1.0; }

    /// True when specificity == 1 (no false positives, PPV identically 1).
    bool perfect_specificity() const { return specificity_ == 1.0; }

private:
    double sensitivity_;
    double specificity_;
};

/// Transmission/recovery rates and initial compartment sizes of an
/// SIR epidemic.  Compartments are stored in the same unit as
/// `population` (use population = 1 for fractional compartments).
class EpidemicParams {
public:
    /// Throws ValidationError unless beta >= 0, gamma > 0, population > 0,
    /// all compartments >= 0 and s0 + i0 + r0 == population (relative
    /// tolerance 1e-9).
    EpidemicParams(double beta, double gamma, double population,
                   double s0, double i0, double r0);

    double beta() const { return beta_; }
    double gamma() const { return gamma_; }
    double population() const { return population_; }
    double s0() const { return s0_; }
    double i0() const { return i0_; }
    double r0() const { return r0_; }

    /// Basic reproduction number beta/gamma.
    double r_naught() const { return beta_ / gamma_; }

private:
    double beta_;
    double gamma_;
    double population_;
    double s0_;
    double i0_;
    double r0_;
};

/// One sampled point of an SIR trajectory (absolute compartment sizes).
struct SirState {
    double t = 0.0;
    double s = 0.0;
    double i = 0.0;
    double r = 0.0;

    double total() const { return s + i + r; }
};

/// A proportion in [0, 1].  Construction rejects anything else (including
/// NaN), so downstream screening math never sees an invalid prevalence.
class Prevalence {
public:
    explicit Prevalence(double value);

    double value() const { return value_; }

private:
    double value_;
};

/// An ordered sequence of SIR samples together with the parameters that
/// produced it.  Construction validates the structural invariants every
/// consumer relies on:
///   - at least one sample, strictly increasing times;
///   - non-negative compartments conserving the population
///     (relative tolerance 1e-8);
///   - susceptible non-increasing and recovered non-decreasing
///     (slack 1e-12 * population for rounding).
class Trajectory {
public:
    Trajectory(EpidemicParams params, std::vector<SirState> samples);

    const EpidemicParams& params() const { return params_; }
    const std::vector<SirState>& samples() const { return samples_; }
    std::size_t size() const { return samples_.size(); }
    const SirState& operator[](std::size_t idx) const { return samples_[idx]; }

    /// Sample with the largest infected compartment (first one on ties).
    const SirState& peak() const;

private:
    EpidemicParams params_;
    std::vector<SirState> samples_;
};

} // namespace episcreen
