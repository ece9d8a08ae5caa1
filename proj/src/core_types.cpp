#include "episcreen/core_types.hpp"

#include <cmath>
#include <sstream>

namespace episcreen {

namespace {

bool finite(double x) { return std::isfinite(x); }

[[noreturn]] void fail(const std::string& msg) { throw ValidationError(msg); }

} // namespace

TestCharacteristics::TestCharacteristics(double sensitivity, double specificity)
    : sensitivity_(sensitivity), specificity_(specificity) {
    if (!finite(sensitivity) || sensitivity <= 0.0 || sensitivity > 1.0)
        fail("sensitivity must lie in (0, 1]");
    if (!finite(specificity) || specificity <= 0.0 || specificity > 1.0)
        fail("specificity must lie in (0, 1]");
    if (youden_j() <= 0.0)
        fail("youden index must be positive: sensitivity + specificity must exceed 1");
}

EpidemicParams::EpidemicParams(double beta, double gamma, double population,
                               double s0, double i0, double r0)
    : beta_(beta), gamma_(gamma), population_(population),
      s0_(s0), i0_(i0), r0_(r0) {
    if (!finite(beta) || beta < 0.0) fail("beta must be finite and >= 0");
    if (!finite(gamma) || gamma <= 0.0) fail("gamma must be finite and > 0");
    if (!finite(population) || population <= 0.0) fail("population must be positive");
    if (!finite(s0) || s0 < 0.0) fail("initial susceptible must be >= 0");
    if (!finite(i0) || i0 < 0.0) fail("initial infected must be >= 0");
    if (!finite(r0) || r0 < 0.0) fail("initial recovered must be >= 0");
    const double total = s0 + i0 + r0;
    if (std::abs(total - population) > 1e-9 * population) {
        std::ostringstream os;
        os << "initial compartments sum to " << total
           << " but population is " << population;
        fail(os.str());
    }
}

Prevalence::Prevalence(double value) : value_(value) {
    if (!finite(value) || value < 0.0 || value > 1.0)
        fail("prevalence must lie in [0, 1]");
}

Trajectory::Trajectory(EpidemicParams params, std::vector<SirState> samples)
    : params_(params), samples_(std::move(samples)) {
    if (samples_.empty()) fail("trajectory needs at least one sample");
    const double n = params_.population();
    const double slack = 1e-12 * n;
    for (std::size_t k = 0; k < samples_.size(); ++k) {
        const SirState& st = samples_[k];
        if (!finite(st.t) || !finite(st.s) || !finite(st.i) || !finite(st.r))
            fail("trajectory sample contains a non-finite value");
        if (st.s < 0.0 || st.i < 0.0 || st.r < 0.0)
            fail("trajectory sample has a negative compartment");
        if (std::abs(st.total() - n) > 1e-8 * n)
            fail("trajectory sample does not conserve the population");
        if (k > 0) {
            const SirState& prev = samples_[k - 1];
            if (st.t <= prev.t) fail("trajectory times must be strictly increasing");
            if (st.s > prev.s + slack) fail("susceptible compartment must be non-increasing");
            if (st.r < prev.r - slack) fail("recovered compartment must be non-decreasing");
        }
    }
}

const SirState& Trajectory::peak() const {
    std::size_t best = 0;
    for (std::size_t k = 1; k < samples_.size(); ++k)
        if (samples_[k].i > samples_[best].i) best = k;
    return samples_[best];
}

} // namespace episcreen
