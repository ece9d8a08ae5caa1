#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "episcreen/report.hpp"
#include "episcreen/scenario.hpp"

namespace {

// Exit codes: 0 ok, 2 configuration/input problem, 3 numerical failure,
// 4 degenerate baseline, 1 anything unexpected.
constexpr int kOk = 0;
constexpr int kUnexpected = 1;
constexpr int kConfig = 2;
constexpr int kNumeric = 3;
constexpr int kBaseline = 4;

episcreen::Scenario load_scenario(const std::string& config_path) {
    return episcreen::parse_scenario_file(config_path);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"SIR epidemic simulation coupled to screening-test analytics"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;

    auto* simulate = app.add_subcommand(
        "simulate", "Integrate the epidemic and write the weekly trajectory");
    simulate->add_option("--config", config_path, "scenario file")->required();
    simulate->add_option("--out", out_path, "output CSV (a *_full.csv sidecar is written next to it)")
        ->required();

    std::optional<std::string> trajectory_csv;
    std::optional<std::string> infected_csv;
    auto* analyze = app.add_subcommand(
        "analyze", "Screening analysis (ppv, ppv ratio, repeat-test counts) per week");
    analyze->add_option("--config", config_path, "scenario file")->required();
    analyze->add_option("--out", out_path, "output CSV (a *_full.csv sidecar is written next to it)")
        ->required();
    analyze->add_option("--trajectory", trajectory_csv,
                        "analyze this simulate output instead of re-simulating");
    analyze->add_option("--infected-csv", infected_csv,
                        "analyze an external week,infected series");

    double sensitivity = 0.0;
    double specificity = 0.0;
    auto* threshold = app.add_subcommand(
        "threshold", "Print the prevalence threshold of a test");
    threshold->add_option("--a", sensitivity, "test sensitivity")->required();
    threshold->add_option("--b", specificity, "test specificity")->required();

    auto* plotdata = app.add_subcommand(
        "plotdata", "Write <base>_sir.csv and <base>_ppv.csv for plotting");
    plotdata->add_option("--config", config_path, "scenario file")->required();
    plotdata->add_option("--out", out_path, "output base path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return kConfig;
    }

    try {
        if (simulate->parsed()) {
            episcreen::run_simulate(load_scenario(config_path), out_path);
        } else if (analyze->parsed()) {
            std::optional<std::filesystem::path> trajectory;
            std::optional<std::filesystem::path> infected;
            if (trajectory_csv) trajectory = *trajectory_csv;
            if (infected_csv) infected = *infected_csv;
            episcreen::run_analyze(load_scenario(config_path), trajectory,
                                   infected, out_path);
        } else if (threshold->parsed()) {
            episcreen::run_threshold(sensitivity, specificity, std::cout);
        } else if (plotdata->parsed()) {
            episcreen::run_plotdata(load_scenario(config_path), out_path);
        }
        return kOk;
    } catch (const episcreen::NonFiniteStateError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kNumeric;
    } catch (const episcreen::InvalidBaselineError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kBaseline;
    } catch (const episcreen::Error& e) {
        // config, validation, calibration and policy problems all trace back
        // to the inputs
        std::cerr << "error: " << e.what() << '\n';
        return kConfig;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << '\n';
        return kUnexpected;
    }
}
