#pragma once

#include <filesystem>
#include <istream>
#include <variant>

#include "episcreen/calibration.hpp"
#include "episcreen/core_types.hpp"
#include "episcreen/coupling.hpp"
#include "episcreen/screening.hpp"
#include "episcreen/sir_integrator.hpp"

namespace episcreen {

/// A fully resolved run description: the screening test, the epidemic
/// (either explicit rates or calibration targets), and the knobs of the
/// integration and the screening analysis.
struct Scenario {
    TestCharacteristics test;
    std::variant<EpidemicParams, CalibrationTargets> epidemic;
    IntegrationConfig integration;
    PrevalenceSource source = PrevalenceSource::InfectedFraction;
    Baseline baseline;
    SerialTestPolicy policy;
};

/// Parse a scenario from `key = value` lines ('#' starts a comment).
///
/// Required keys: sensitivity, specificity, weeks, i0, and either
/// {beta, gamma} (explicit rates) or {s_inf, early_growth} (calibration).
/// Optional keys and defaults:
///   population = 1 (explicit rates only), s0 = remainder, r0 = 0,
///   dt = 0.01, sample_every = 1, method = rk4 | euler,
///   prevalence_source = infected_fraction | incidence_rate,
///   baseline = peak | first | explicit (explicit needs baseline_phi),
///   n_max = 50, target = threshold | a fixed value in (0, 1).
/// Unknown or duplicate keys raise ConfigError.
Scenario parse_scenario(std::istream& in);

/// parse_scenario on a file; missing/unreadable file raises ConfigError.
Scenario parse_scenario_file(const std::filesystem::path& path);

/// The built-in reference run: a 95%-sensitive, 99%-specific test against
/// a calibrated epidemic (final susceptible fraction 0.0022, weekly early
/// growth 2.1, seeded with an infected fraction of 1e-4 at week 1),
/// integrated for 34 weeks with RK4 at dt = 0.01.
Scenario reference_scenario();

/// Concrete integrable parameters for a scenario.  Explicit rates pass
/// through; calibration targets are fitted and the epidemic is seeded one
/// growth step before the week-1 observation, i.e. i(0) = i0 / early_growth.
EpidemicParams resolve_epidemic(const Scenario& scenario);

} // namespace episcreen
