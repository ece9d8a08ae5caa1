#include "episcreen/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

namespace episcreen {

namespace {

[[noreturn]] void bad(const std::string& msg) { throw ConfigError(msg); }

std::string fmt_full(double value) {
    if (value == 0.0) value = 0.0; // normalize -0
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, ptr);
}

std::string fmt_fixed4(double value) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.4f", value + 0.0); // + 0.0 normalizes -0
    return buf;
}

std::string fmt_value(double value, CsvStyle style) {
    return style == CsvStyle::Full ? fmt_full(value) : fmt_fixed4(value);
}

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    /// Column index by name, or -1.
    int column(const std::string& name) const {
        const auto it = std::find(header.begin(), header.end(), name);
        return it == header.end() ? -1 : static_cast<int>(it - header.begin());
    }
};

std::vector<std::string> split_line(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        cells.push_back(line.substr(start, comma - start));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return cells;
}

CsvTable read_csv(std::istream& in, const std::string& origin) {
    CsvTable table;
    std::string line;
    if (!std::getline(in, line)) bad(origin + ": empty file");
    table.header = split_line(line);
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        const auto cells = split_line(line);
        if (cells.size() != table.header.size())
            bad(origin + ": line " + std::to_string(line_no) +
                " has " + std::to_string(cells.size()) + " cells, expected " +
                std::to_string(table.header.size()));
        std::vector<double> row;
        row.reserve(cells.size());
        for (const std::string& cell : cells) {
            double value = 0.0;
            const char* begin = cell.data();
            const char* end = begin + cell.size();
            const auto [ptr, ec] = std::from_chars(begin, end, value);
            if (ec != std::errc{} || ptr != end || !std::isfinite(value))
                bad(origin + ": line " + std::to_string(line_no) +
                    " has a non-numeric cell '" + cell + "'");
            row.push_back(value);
        }
        table.rows.push_back(std::move(row));
    }
    if (table.rows.empty()) bad(origin + ": no data rows");
    return table;
}

int required_column(const CsvTable& table, const std::string& name,
                    const std::string& origin) {
    const int idx = table.column(name);
    if (idx < 0) bad(origin + ": missing column '" + name + "'");
    return idx;
}

void check_increasing_weeks(const std::vector<double>& weeks,
                            const std::string& origin) {
    for (std::size_t k = 1; k < weeks.size(); ++k)
        if (weeks[k] <= weeks[k - 1])
            bad(origin + ": weeks must be strictly increasing");
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) bad("cannot open output file '" + path.string() + "'");
    return out;
}

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) bad("cannot open input file '" + path.string() + "'");
    return in;
}

} // namespace

std::filesystem::path sidecar_path(const std::filesystem::path& out) {
    std::filesystem::path side = out;
    side.replace_filename(out.stem().string() + "_full" +
                          out.extension().string());
    return side;
}

void write_trajectory_csv(const Trajectory& trajectory, std::ostream& out,
                          CsvStyle style) {
    out << "week,susceptible,infected,recovered\n";
    for (const SirState& st : trajectory.samples()) {
        out << fmt_full(st.t) << ',' << fmt_value(st.s, style) << ','
            << fmt_value(st.i, style) << ',' << fmt_value(st.r, style) << '\n';
    }
}

void write_screening_csv(const ScreeningSeries& series,
                         const std::vector<CompartmentRow>& compartments,
                         std::ostream& out, CsvStyle style) {
    if (compartments.size() != series.rows.size())
        throw ValidationError("compartment echo must be parallel to the series");
    out << "week,pt,susceptible,infected,recovered,ppv,zeta,n\n";
    for (std::size_t k = 0; k < series.rows.size(); ++k) {
        const ScreeningRow& row = series.rows[k];
        const CompartmentRow& comp = compartments[k];
        out << fmt_full(row.t) << ',' << fmt_value(row.pt, style) << ','
            << fmt_value(comp.s, style) << ',' << fmt_value(comp.i, style) << ','
            << fmt_value(comp.r, style) << ',' << fmt_value(row.ppv, style) << ','
            << fmt_value(row.zeta, style) << ',' << row.n_iter << '\n';
    }
}

std::vector<SirState> read_trajectory_csv(std::istream& in,
                                          const std::string& origin) {
    const CsvTable table = read_csv(in, origin);
    const int week = required_column(table, "week", origin);
    const int sus = required_column(table, "susceptible", origin);
    const int inf = required_column(table, "infected", origin);
    const int rec = required_column(table, "recovered", origin);

    std::vector<SirState> samples;
    std::vector<double> weeks;
    samples.reserve(table.rows.size());
    for (const auto& row : table.rows) {
        SirState st{row[week], row[sus], row[inf], row[rec]};
        if (st.s < 0.0 || st.i < 0.0 || st.r < 0.0)
            bad(origin + ": compartments must be non-negative");
        weeks.push_back(st.t);
        samples.push_back(st);
    }
    check_increasing_weeks(weeks, origin);

    // Catch files that are not actually compartment tables; the slack leaves
    // room for 4-decimal display rounding.
    const double population = samples.front().total();
    if (!(population > 0.0)) bad(origin + ": first row has an empty population");
    for (const SirState& st : samples)
        if (std::abs(st.total() - population) > 1e-3 * population)
            bad(origin + ": rows do not conserve the population");
    return samples;
}

PrevalenceInput read_prevalence_csv(std::istream& in, const std::string& origin) {
    const CsvTable table = read_csv(in, origin);
    const int week = required_column(table, "week", origin);
    const int inf = required_column(table, "infected", origin);
    const int sus = table.column("susceptible");
    const int rec = table.column("recovered");

    PrevalenceInput input;
    std::vector<double> weeks;
    for (const auto& row : table.rows) {
        const double infected = row[inf];
        if (infected < 0.0 || infected > 1.0)
            bad(origin + ": infected values must lie in [0, 1]");
        const double recovered = rec >= 0 ? row[rec] : 0.0;
        const double susceptible =
            sus >= 0 ? row[sus] : std::max(0.0, 1.0 - infected - recovered);
        weeks.push_back(row[week]);
        input.series.push_back({row[week], Prevalence(infected)});
        input.compartments.push_back({susceptible, infected, recovered});
    }
    check_increasing_weeks(weeks, origin);
    return input;
}

void run_simulate(const Scenario& scenario, const std::filesystem::path& out) {
    const Trajectory trajectory =
        integrate(resolve_epidemic(scenario), scenario.integration);
    auto display = open_output(out);
    write_trajectory_csv(trajectory, display, CsvStyle::Display);
    auto full = open_output(sidecar_path(out));
    write_trajectory_csv(trajectory, full, CsvStyle::Full);
}

void run_analyze(const Scenario& scenario,
                 const std::optional<std::filesystem::path>& trajectory_csv,
                 const std::optional<std::filesystem::path>& infected_csv,
                 const std::filesystem::path& out) {
    if (trajectory_csv && infected_csv)
        bad("give at most one of the trajectory and infected-series inputs");

    std::vector<TimedPrevalence> series;
    std::vector<CompartmentRow> compartments;
    if (infected_csv) {
        if (scenario.source == PrevalenceSource::IncidenceRate)
            bad("incidence_rate needs rates and a full trajectory; "
                "drop the infected-series input");
        auto in = open_input(*infected_csv);
        PrevalenceInput input = read_prevalence_csv(in, infected_csv->string());
        series = std::move(input.series);
        compartments = std::move(input.compartments);
    } else if (trajectory_csv) {
        if (scenario.source == PrevalenceSource::IncidenceRate)
            bad("incidence_rate analysis must simulate from the scenario; "
                "drop the trajectory input");
        auto in = open_input(*trajectory_csv);
        const auto samples = read_trajectory_csv(in, trajectory_csv->string());
        const double population = samples.front().total();
        for (const SirState& st : samples) {
            const double phi = std::clamp(st.i / population, 0.0, 1.0);
            series.push_back({st.t, Prevalence(phi)});
            compartments.push_back({st.s, st.i, st.r});
        }
    } else {
        const Trajectory trajectory =
            integrate(resolve_epidemic(scenario), scenario.integration);
        series = prevalence_series(trajectory, scenario.source);
        for (const SirState& st : trajectory.samples())
            compartments.push_back({st.s, st.i, st.r});
    }

    const ScreeningSeries analyzed =
        analyze_series(series, scenario.test, scenario.baseline, scenario.policy);
    auto display = open_output(out);
    write_screening_csv(analyzed, compartments, display, CsvStyle::Display);
    auto full = open_output(sidecar_path(out));
    write_screening_csv(analyzed, compartments, full, CsvStyle::Full);
}

void run_threshold(double sensitivity, double specificity, std::ostream& out) {
    const TestCharacteristics test(sensitivity, specificity);
    const PrevalenceThreshold threshold = prevalence_threshold(test);
    out << "phi_e = " << fmt_fixed4(threshold.value.value()) << '\n';
    out << "J = " << fmt_fixed4(test.youden_j()) << '\n';
    if (threshold.degenerate)
        out << "warning: perfect specificity, threshold degenerates to zero\n";
    else
        out << "ppv_at_threshold = " << fmt_fixed4(ppv(test, threshold.value))
            << '\n';
}

void run_plotdata(const Scenario& scenario, const std::filesystem::path& base) {
    const Trajectory trajectory =
        integrate(resolve_epidemic(scenario), scenario.integration);
    const auto series = prevalence_series(trajectory, scenario.source);
    const PrevalenceThreshold threshold = prevalence_threshold(scenario.test);

    std::filesystem::path sir_path = base;
    sir_path += "_sir.csv";
    auto sir_out = open_output(sir_path);
    write_trajectory_csv(trajectory, sir_out, CsvStyle::Display);

    std::filesystem::path ppv_path = base;
    ppv_path += "_ppv.csv";
    auto ppv_out = open_output(ppv_path);
    ppv_out << "week,phi,ppv,pt\n";
    for (const TimedPrevalence& tp : series) {
        const bool degenerate_zero =
            tp.phi.value() == 0.0 && scenario.test.perfect_specificity();
        const double value = degenerate_zero ? 0.0 : ppv(scenario.test, tp.phi);
        ppv_out << fmt_full(tp.t) << ',' << fmt_fixed4(tp.phi.value()) << ','
                << fmt_fixed4(value) << ','
                << fmt_fixed4(threshold.value.value()) << '\n';
    }
}

} // namespace episcreen
