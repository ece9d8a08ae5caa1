#include "episcreen/screening.hpp"

#include <cmath>

namespace episcreen {

SerialTestPolicy SerialTestPolicy::at_threshold(int n_max) {
    if (n_max < 1) throw ValidationError("n_max must be >= 1");
    return SerialTestPolicy{Target::PpvAtThreshold, 0.0, n_max};
}

SerialTestPolicy SerialTestPolicy::fixed(double target, int n_max) {
    if (n_max < 1) throw ValidationError("n_max must be >= 1");
    if (!(target > 0.0) || !(target < 1.0))
        throw ValidationError("fixed serial-test target must lie in (0, 1)");
    return SerialTestPolicy{Target::Fixed, target, n_max};
}

double ppv(const TestCharacteristics& test, Prevalence phi) {
    const double p = phi.value();
    const double true_pos = test.sensitivity() * p;
    const double false_pos = (1.0 - test.specificity()) * (1.0 - p);
    const double denom = true_pos + false_pos;
    if (denom == 0.0)
        throw DegeneratePpvError(
            "ppv undefined: zero prevalence with perfect specificity");
    return true_pos / denom;
}

double zeta(const TestCharacteristics& test, Prevalence phi0, Prevalence phik) {
    const double p0 = phi0.value();
    const double pk = phik.value();
    if (p0 == 0.0)
        throw InvalidBaselineError("baseline prevalence must be positive");
    // Expanded form of ppv(phik)/ppv(phi0); the shared factors cancel so a
    // single division keeps the ratio exact at pk == p0 and at specificity 1.
    const double false_pos = 1.0 - test.specificity();
    const double cross = test.youden_j() * p0 * pk;
    const double num = pk * false_pos + cross;
    const double den = p0 * false_pos + cross;
    if (den == 0.0)
        throw DegeneratePpvError(
            "ppv ratio undefined: zero prevalence with perfect specificity");
    return num / den;
}

PrevalenceThreshold prevalence_threshold(const TestCharacteristics& test) {
    const double false_pos = 1.0 - test.specificity();
    if (false_pos == 0.0) return {Prevalence(0.0), true};
    const double value =
        (std::sqrt(test.sensitivity() * false_pos) - false_pos) / test.youden_j();
    return {Prevalence(value), false};
}

double serial_ppv(const TestCharacteristics& test, Prevalence phi, int n) {
    if (n < 1) throw ValidationError("serial-test count must be >= 1");
    const double p = phi.value();
    const double true_pos = std::pow(test.sensitivity(), n) * p;
    const double false_pos = std::pow(1.0 - test.specificity(), n) * (1.0 - p);
    const double denom = true_pos + false_pos;
    if (denom == 0.0)
        throw DegeneratePpvError(
            "serial ppv undefined: zero prevalence with perfect specificity");
    return true_pos / denom;
}

double serial_test_target(const TestCharacteristics& test,
                          const SerialTestPolicy& policy) {
    if (policy.target == SerialTestPolicy::Target::Fixed) return policy.fixed_target;
    // With perfect specificity the threshold degenerates to zero and a single
    // test already has ppv 1 at any positive prevalence; target 1 keeps the
    // search well-defined (reached exactly at n == 1).
    if (test.perfect_specificity()) return 1.0;
    return ppv(test, prevalence_threshold(test).value);
}

int iterations_to_overcome(const TestCharacteristics& test, Prevalence phi,
                           const SerialTestPolicy& policy) {
    if (policy.n_max < 1) throw ValidationError("n_max must be >= 1");
    const double target = serial_test_target(test, policy);
    if (phi.value() == 0.0)
        throw NotReachableError(
            "zero prevalence: no number of repeat tests reaches the target ppv");
    for (int n = 1; n <= policy.n_max; ++n)
        if (serial_ppv(test, phi, n) >= target) return n;
    throw NotReachableError("target ppv not reached within the repeat-test cap");
}

} // namespace episcreen
