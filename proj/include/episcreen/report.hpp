#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "episcreen/coupling.hpp"
#include "episcreen/scenario.hpp"

namespace episcreen {

/// Numeric rendering of CSV output.  Display rounds values to four
/// decimals for human-readable tables; Full writes shortest-round-trip
/// doubles so a written file can be re-read without losing a bit.
enum class CsvStyle { Display, Full };

/// Companion full-precision file for an output: "runs/sir.csv" ->
/// "runs/sir_full.csv" (the suffix goes before the extension).
std::filesystem::path sidecar_path(const std::filesystem::path& out);

/// Write "week,susceptible,infected,recovered" rows.
void write_trajectory_csv(const Trajectory& trajectory, std::ostream& out,
                          CsvStyle style);

/// Compartment values echoed next to each analyzed week.
struct CompartmentRow {
    double s = 0.0;
    double i = 0.0;
    double r = 0.0;
};

/// Write "week,pt,susceptible,infected,recovered,ppv,zeta,n" rows.
/// `compartments` must be parallel to `series.rows`.
void write_screening_csv(const ScreeningSeries& series,
                         const std::vector<CompartmentRow>& compartments,
                         std::ostream& out, CsvStyle style);

/// Read a trajectory CSV (as written by write_trajectory_csv).  Columns are
/// matched by header name; unknown columns are ignored.  Weeks must be
/// strictly increasing and compartments non-negative.
std::vector<SirState> read_trajectory_csv(std::istream& in,
                                          const std::string& origin);

/// A prevalence series read from a CSV with at least "week" and "infected"
/// columns ("susceptible"/"recovered" are echoed when present, otherwise
/// derived as 1 - infected - recovered and 0).  Infected values must lie in
/// [0, 1] and weeks must be strictly increasing.
struct PrevalenceInput {
    std::vector<TimedPrevalence> series;
    std::vector<CompartmentRow> compartments;
};

PrevalenceInput read_prevalence_csv(std::istream& in, const std::string& origin);

/// Integrate the scenario and write the sampled trajectory to `out` plus a
/// full-precision sidecar next to it.
void run_simulate(const Scenario& scenario, const std::filesystem::path& out);

/// Screening analysis.  The prevalence series comes from, in order of
/// precedence: `infected_csv` (prevalence = the infected column),
/// `trajectory_csv` (a simulate output; prevalence per the scenario's
/// source), or an in-memory simulation of the scenario.  Writes the
/// analyzed table to `out` plus a full-precision sidecar.
void run_analyze(const Scenario& scenario,
                 const std::optional<std::filesystem::path>& trajectory_csv,
                 const std::optional<std::filesystem::path>& infected_csv,
                 const std::filesystem::path& out);

/// Print the prevalence threshold, the Youden index and (when the
/// threshold is not degenerate) the single-test PPV at the threshold.
void run_threshold(double sensitivity, double specificity, std::ostream& out);

/// Write "<base>_sir.csv" (the trajectory) and "<base>_ppv.csv"
/// (week, prevalence, ppv and the constant threshold) for plotting.
void run_plotdata(const Scenario& scenario, const std::filesystem::path& base);

} // namespace episcreen
