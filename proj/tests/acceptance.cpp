// Acceptance suite: one pass/fail line per criterion, nonzero exit if any
// criterion fails.  Tolerances are the contractual ones, not the (usually
// much tighter) ones the implementation achieves.

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "episcreen/calibration.hpp"
#include "episcreen/coupling.hpp"
#include "episcreen/report.hpp"
#include "episcreen/scenario.hpp"
#include "episcreen/screening.hpp"
#include "episcreen/sir_integrator.hpp"
#include "table_data.hpp"

using namespace episcreen;
namespace fs = std::filesystem;

namespace {

const std::string kCli = EPISCREEN_CLI;
const std::string kSrc = EPISCREEN_SOURCE_DIR;

struct Criterion {
    std::string name;
    bool pass = false;
    std::string summary;
    std::vector<std::string> details;
};

std::vector<Criterion> g_results;

void record(const std::string& name, bool pass, const std::string& summary,
            std::vector<std::string> details = {}) {
    g_results.push_back({name, pass, summary, std::move(details)});
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
        .count();
}

std::string fmt(double v, int digits = 4) {
    std::ostringstream os;
    os.precision(digits);
    os << std::fixed << v;
    return os.str();
}

std::string fmt_sci(double v) {
    std::ostringstream os;
    os.precision(2);
    os << std::scientific << v;
    return os.str();
}

Trajectory reference_trajectory() {
    const Scenario sc = reference_scenario();
    return integrate(resolve_epidemic(sc), sc.integration);
}

// ---------------------------------------------------------------- criterion 1

void criterion_reference_table() {
    const auto start = std::chrono::steady_clock::now();

    std::vector<TimedPrevalence> series;
    for (const refdata::Row& row : refdata::kScreeningTable)
        series.push_back({static_cast<double>(row.week), Prevalence(row.i)});
    const TestCharacteristics test(0.95, 0.99);
    const ScreeningSeries result = analyze_series(
        series, test, Baseline::peak(), SerialTestPolicy::at_threshold());

    std::vector<int> ppv_misses, zeta_misses, n_misses;
    double worst_ppv = 0.0, worst_zeta = 0.0;
    for (int k = 0; k < refdata::kRowCount; ++k) {
        const refdata::Row& expected = refdata::kScreeningTable[k];
        const ScreeningRow& row = result.rows[k];
        const double dppv = std::abs(row.ppv - expected.ppv);
        const double dzeta = std::abs(row.zeta - expected.zeta);
        worst_ppv = std::max(worst_ppv, dppv);
        worst_zeta = std::max(worst_zeta, dzeta);
        if (dppv > 0.0005) ppv_misses.push_back(expected.week);
        if (dzeta > 0.0005) zeta_misses.push_back(expected.week);
        if (row.n_iter != expected.n) n_misses.push_back(expected.week);
    }
    const double peak_zeta = result.rows[refdata::kPeakWeek - 1].zeta;
    const bool peak_ok = std::abs(peak_zeta - 1.0) <= 1e-9;
    const double elapsed = seconds_since(start);
    const bool in_time = elapsed < 1.0;

    const bool pass = ppv_misses.empty() && zeta_misses.empty() &&
                      n_misses.empty() && peak_ok && in_time;
    std::ostringstream summary;
    summary << "ppv within 5e-4 on " << (34 - static_cast<int>(ppv_misses.size()))
            << "/34 rows, zeta on " << (34 - static_cast<int>(zeta_misses.size()))
            << "/34, n exact on " << (34 - static_cast<int>(n_misses.size()))
            << "/34, zeta(peak)=" << fmt(peak_zeta) << " ["
            << fmt(elapsed, 2) << "s]";

    std::vector<std::string> details;
    auto list_weeks = [](const std::vector<int>& weeks) {
        std::ostringstream os;
        for (std::size_t k = 0; k < weeks.size(); ++k)
            os << (k ? "," : "") << weeks[k];
        return os.str();
    };
    if (!ppv_misses.empty())
        details.push_back("ppv off at weeks " + list_weeks(ppv_misses) +
                          " (worst |d|=" + fmt_sci(worst_ppv) + ")");
    if (!zeta_misses.empty())
        details.push_back("zeta off at weeks " + list_weeks(zeta_misses) +
                          " (worst |d|=" + fmt_sci(worst_zeta) + ")");
    if (!n_misses.empty())
        details.push_back("n off at weeks " + list_weeks(n_misses));
    if (!ppv_misses.empty() || !zeta_misses.empty())
        details.push_back(
            "the reference ppv/zeta columns were derived from unrounded "
            "prevalences; at small phi the 4-decimal infected column cannot "
            "pin them to 5e-4 (slope dppv/dphi ~ 95)");
    record("1. screening columns of the reference table", pass, summary.str(),
           std::move(details));
}

// ---------------------------------------------------------------- criterion 2

void criterion_threshold_constants() {
    const TestCharacteristics test(0.95, 0.99);
    const double phi_e = prevalence_threshold(test).value.value();
    const double j = test.youden_j();
    const bool phi_ok = std::abs(phi_e - 0.0930) <= 0.0005;
    const bool j_ok = j == 0.94 || fmt(j) == "0.9400";
    record("2. prevalence threshold constants", phi_ok && j_ok,
           "phi_e=" + fmt(phi_e) + " (target 0.0930 +/- 0.0005), J=" + fmt(j));
}

// ---------------------------------------------------------------- criterion 3

void criterion_integrator_invariants() {
    const auto start = std::chrono::steady_clock::now();
    const Scenario sc = reference_scenario();
    const EpidemicParams params = resolve_epidemic(sc);
    const Trajectory traj = integrate(params, sc.integration);

    double worst_conservation = 0.0;
    bool monotone = true;
    for (std::size_t k = 0; k < traj.size(); ++k) {
        worst_conservation =
            std::max(worst_conservation, std::abs(traj[k].total() - 1.0));
        if (k > 0 && (traj[k].s > traj[k - 1].s + 1e-12 ||
                      traj[k].r < traj[k - 1].r - 1e-12))
            monotone = false;
    }
    const double residual = final_size_residual(traj);

    IntegrationConfig halved = sc.integration;
    halved.dt = sc.integration.dt / 2.0;
    const Trajectory fine = integrate(params, halved);
    double worst_halving = 0.0;
    for (std::size_t k = 0; k < traj.size(); ++k) {
        worst_halving = std::max(worst_halving, std::abs(traj[k].s - fine[k].s));
        worst_halving = std::max(worst_halving, std::abs(traj[k].i - fine[k].i));
        worst_halving = std::max(worst_halving, std::abs(traj[k].r - fine[k].r));
    }
    const double elapsed = seconds_since(start);

    const bool pass = worst_conservation <= 1e-8 && monotone &&
                      residual <= 1e-4 && worst_halving <= 1e-5 && elapsed < 5.0;
    record("3. integrator invariant suite", pass,
           "conservation " + fmt_sci(worst_conservation) +
               " (<=1e-8), monotone " + (monotone ? "yes" : "NO") +
               ", final-size residual " + fmt_sci(residual) +
               " (<=1e-4), halving shift " + fmt_sci(worst_halving) +
               " (<=1e-5) [" + fmt(elapsed, 2) + "s]");
}

// ---------------------------------------------------------------- criterion 4

void criterion_epidemic_envelope() {
    const Trajectory traj = reference_trajectory();
    const SirState& peak = traj.peak();
    const double final_s = traj[traj.size() - 1].s;

    const bool peak_value_ok = peak.i >= 0.49 && peak.i <= 0.55;
    const bool peak_week_ok = std::abs(peak.t - 14.0) <= 1.0;
    const bool final_ok = final_s >= 0.001 && final_s <= 0.004;
    const bool pass = peak_value_ok && peak_week_ok && final_ok;

    std::vector<std::string> details;
    if (!peak_week_ok)
        details.push_back(
            "with rates recovered only from the final size and the early "
            "growth factor, the continuous dynamics peak at week " +
            fmt(peak.t, 0) + "; no admissible growth factor (2.0-2.3) lands "
            "the peak inside 14 +/- 1 while keeping the other envelopes");
    record("4. calibrated epidemic envelope", pass,
           "peak i=" + fmt(peak.i) + " in [0.49,0.55] " +
               (peak_value_ok ? "ok" : "MISS") + ", peak week=" + fmt(peak.t, 0) +
               " vs 14 +/- 1 " + (peak_week_ok ? "ok" : "MISS") +
               ", final s=" + fmt(final_s) + " in [0.001,0.004] " +
               (final_ok ? "ok" : "MISS"),
           std::move(details));
}

// ---------------------------------------------------------------- criterion 5

void criterion_algebraic_identities() {
    const auto start = std::chrono::steady_clock::now();
    std::mt19937 rng(97);
    std::uniform_real_distribution<double> unit(1e-6, 1.0 - 1e-6);
    std::uniform_real_distribution<double> character(0.5, 0.9999);
    // the zeta->1 continuity probe sits where the log-slope of ppv is O(10),
    // so the 1e-6 budget for a 1e-8 step is meaningful
    std::uniform_real_distribution<double> mid(0.1, 0.9);

    int draws = 0;
    int ratio_bad = 0, limit_bad = 0, mono_phi_bad = 0, mono_n_bad = 0;
    while (draws < 1000) {
        const double a = character(rng);
        const double b = character(rng);
        if (a + b - 1.0 <= 0.01) continue;
        ++draws;
        const TestCharacteristics t(a, b);
        const double p0 = unit(rng);
        const double pk = unit(rng);

        const double lhs =
            zeta(t, Prevalence(p0), Prevalence(pk)) * ppv(t, Prevalence(p0));
        const double rhs = ppv(t, Prevalence(pk));
        if (std::abs(lhs - rhs) > 1e-12 * rhs) ++ratio_bad;

        {
            const double pm = mid(rng);
            const double near = zeta(t, Prevalence(pm), Prevalence(pm - 1e-8));
            if (std::abs(near - 1.0) > 1e-6) ++limit_bad;
        }

        const double lo = std::min(p0, pk);
        const double hi = std::max(p0, pk);
        if (hi - lo > 1e-9 &&
            !(ppv(t, Prevalence(lo)) < ppv(t, Prevalence(hi))))
            ++mono_phi_bad;

        double prev = serial_ppv(t, Prevalence(lo), 1);
        for (int n = 2; n <= 6; ++n) {
            const double cur = serial_ppv(t, Prevalence(lo), n);
            if (prev < 1.0 - 1e-12 && !(cur > prev)) ++mono_n_bad;
            prev = cur;
        }
    }
    const double elapsed = seconds_since(start);
    const bool pass = ratio_bad == 0 && limit_bad == 0 && mono_phi_bad == 0 &&
                      mono_n_bad == 0 && elapsed < 5.0;
    record("5. algebraic identity properties", pass,
           "1000 draws: ratio identity misses " + std::to_string(ratio_bad) +
               ", limit misses " + std::to_string(limit_bad) +
               ", ppv monotonicity misses " + std::to_string(mono_phi_bad) +
               ", serial monotonicity misses " + std::to_string(mono_n_bad) +
               " [" + fmt(elapsed, 2) + "s]");
}

// ---------------------------------------------------------------- criterion 6

void criterion_serial_closed_form() {
    const auto start = std::chrono::steady_clock::now();
    const double a_grid[] = {0.70, 0.75, 0.80, 0.85, 0.90, 0.95, 0.99};
    const double b_grid[] = {0.70, 0.80, 0.90, 0.95, 0.99, 0.999};
    const double phi_grid[] = {1e-4, 3e-4, 1e-3, 3e-3, 0.01, 0.03,
                               0.093, 0.1, 0.2, 0.5};

    int compared = 0, mismatches = 0, iff_misses = 0, skipped = 0;
    for (const double a : a_grid) {
        for (const double b : b_grid) {
            if (a + b - 1.0 <= 0.0) continue;
            const TestCharacteristics t(a, b);
            const PrevalenceThreshold pt = prevalence_threshold(t);
            const double target = ppv(t, pt.value);
            const SerialTestPolicy policy = SerialTestPolicy::at_threshold();

            auto check_phi = [&](double phi) {
                const int iterative =
                    iterations_to_overcome(t, Prevalence(phi), policy);
                const double odds =
                    ((1.0 - phi) / phi) * (target / (1.0 - target));
                const double x =
                    std::log(odds) / std::log(a / (1.0 - b));
                if (std::abs(x - std::round(x)) <= 1e-9) {
                    ++skipped; // float boundary: iterative is authoritative
                } else {
                    const int closed =
                        std::max(1, static_cast<int>(std::ceil(x)));
                    ++compared;
                    if (iterative != closed) ++mismatches;
                }
                // same caveat for the threshold comparison: when phi sits
                // within rounding distance of phi_e (e.g. a=0.8, b=0.95 puts
                // phi_e at exactly 0.2) the sign of phi - phi_e is noise
                const double gap = phi - pt.value.value();
                if (gap != 0.0 && std::abs(gap) <= 1e-9 * pt.value.value()) {
                    ++skipped;
                } else {
                    const bool above = phi >= pt.value.value();
                    if ((iterative == 1) != above) ++iff_misses;
                }
            };
            for (const double phi : phi_grid) check_phi(phi);
            check_phi(pt.value.value());
            check_phi(pt.value.value() * (1.0 - 1e-3));
            check_phi(pt.value.value() * (1.0 + 1e-3));
        }
    }
    const double elapsed = seconds_since(start);
    const bool pass = mismatches == 0 && iff_misses == 0 && elapsed < 10.0;
    record("6. serial-count closed-form equivalence", pass,
           std::to_string(compared) + " grid points: " +
               std::to_string(mismatches) + " closed-form mismatches, " +
               std::to_string(iff_misses) + " (n==1 iff phi>=phi_e) misses, " +
               std::to_string(skipped) + " float-boundary points skipped [" +
               fmt(elapsed, 2) + "s]");
}

// ---------------------------------------------------------------- criterion 7

void criterion_crossing_timeline() {
    const Scenario sc = reference_scenario();
    const Trajectory traj = reference_trajectory();
    const auto series = prevalence_series(traj, sc.source);
    const double phi_e = prevalence_threshold(sc.test).value.value();

    int upward = -1, downward = -1;
    for (std::size_t k = 0; k + 1 < series.size(); ++k) {
        const double cur = series[k].phi.value();
        const double next = series[k + 1].phi.value();
        if (upward < 0 && cur < phi_e && next >= phi_e)
            upward = static_cast<int>(series[k].t);
        if (upward >= 0 && downward < 0 && cur >= phi_e && next < phi_e)
            downward = static_cast<int>(series[k].t);
    }

    bool ppv_floor_ok = true;
    double worst_ppv = 1.0;
    for (const TimedPrevalence& tp : series) {
        if (tp.phi.value() > phi_e) {
            const double rho = ppv(sc.test, tp.phi);
            worst_ppv = std::min(worst_ppv, rho);
            if (rho < 0.9) ppv_floor_ok = false;
        }
    }

    const bool up_ok = upward >= 9 && upward <= 11;
    const bool down_ok = downward >= 18 && downward <= 20;
    const bool pass = up_ok && down_ok && ppv_floor_ok;
    std::vector<std::string> details;
    if (!down_ok)
        details.push_back(
            "the calibrated epidemic decays slowly after its (late) peak, so "
            "prevalence stays above the threshold until week " +
            std::to_string(downward) +
            "; tied to the same timeline shift as the envelope criterion");
    record("7. threshold-crossing timeline", pass,
           "upward crossing week " + std::to_string(upward) +
               " (want 10 +/- 1) " + (up_ok ? "ok" : "MISS") +
               ", downward week " + std::to_string(downward) +
               " (want 19 +/- 1) " + (down_ok ? "ok" : "MISS") +
               ", min ppv above threshold " + fmt(worst_ppv) + " (>=0.9 " +
               (ppv_floor_ok ? "ok" : "MISS") + ")",
           std::move(details));
}

// ---------------------------------------------------------------- criterion 8

struct CliRun {
    int exit_code = -1;
    std::string out;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    if (!in) return {};
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

CliRun cli(const std::string& args, const fs::path& tmp) {
    const fs::path out_file = tmp / "stdout.txt";
    const std::string cmd = '"' + kCli + "\" " + args + " > \"" +
                            out_file.string() + "\" 2> /dev/null";
    const int raw = std::system(cmd.c_str());
    return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, slurp(out_file)};
}

void criterion_cli_contract() {
    const fs::path tmp =
        fs::temp_directory_path() /
        ("episcreen_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(tmp);
    const std::string cfg = kSrc + "/scenarios/reference.cfg";

    std::vector<std::string> details;
    auto expect = [&details](bool ok, const std::string& what) {
        if (!ok) details.push_back("failed: " + what);
        return ok;
    };

    bool pass = true;
    // golden threshold output
    const CliRun thr = cli("threshold --a 0.95 --b 0.99", tmp);
    pass &= expect(thr.exit_code == 0 &&
                       thr.out == "phi_e = 0.0931\nJ = 0.9400\n"
                                  "ppv_at_threshold = 0.9069\n",
                   "threshold golden stdout");

    // simulate + analyze + plotdata happy paths
    const fs::path sim_out = tmp / "sir.csv";
    pass &= expect(cli("simulate --config \"" + cfg + "\" --out \"" +
                           sim_out.string() + '"',
                       tmp)
                           .exit_code == 0 &&
                       fs::exists(sim_out) && fs::exists(tmp / "sir_full.csv"),
                   "simulate writes display + sidecar");
    const std::string sim_bytes = slurp(sim_out);
    cli("simulate --config \"" + cfg + "\" --out \"" + sim_out.string() + '"',
        tmp);
    pass &= expect(slurp(sim_out) == sim_bytes, "simulate determinism");

    const fs::path mem_out = tmp / "memory.csv";
    const fs::path file_out = tmp / "file.csv";
    pass &= expect(cli("analyze --config \"" + cfg + "\" --out \"" +
                           mem_out.string() + '"',
                       tmp)
                           .exit_code == 0,
                   "analyze from memory");
    pass &= expect(cli("analyze --config \"" + cfg + "\" --trajectory \"" +
                           (tmp / "sir_full.csv").string() + "\" --out \"" +
                           file_out.string() + '"',
                       tmp)
                           .exit_code == 0,
                   "analyze from the sidecar");
    pass &= expect(!slurp(mem_out).empty() &&
                       slurp(mem_out) == slurp(file_out),
                   "sidecar round trip byte-identical to in-memory analysis");
    pass &= expect(cli("plotdata --config \"" + cfg + "\" --out \"" +
                           (tmp / "plot").string() + '"',
                       tmp)
                           .exit_code == 0 &&
                       fs::exists(tmp / "plot_sir.csv") &&
                       fs::exists(tmp / "plot_ppv.csv"),
                   "plotdata writes both files");

    // exit code 2: malformed config, nothing written
    {
        std::ofstream bad(tmp / "bad.cfg");
        bad << "sensitivity = 0.95\nmystery = 1\n";
    }
    const fs::path never = tmp / "never.csv";
    pass &= expect(cli("simulate --config \"" + (tmp / "bad.cfg").string() +
                           "\" --out \"" + never.string() + '"',
                       tmp)
                           .exit_code == 2 &&
                       !fs::exists(never),
                   "exit 2 on malformed config without output");

    // exit code 3: unstable integration
    {
        std::ofstream unstable(tmp / "unstable.cfg");
        unstable << "sensitivity = 0.95\nspecificity = 0.99\nbeta = 5\n"
                    "gamma = 0.1\ni0 = 0.5\ns0 = 0.5\nweeks = 10\ndt = 1\n"
                    "method = euler\n";
    }
    pass &= expect(cli("simulate --config \"" +
                           (tmp / "unstable.cfg").string() + "\" --out \"" +
                           (tmp / "x.csv").string() + '"',
                       tmp)
                           .exit_code == 3,
                   "exit 3 on numeric blowup");

    // exit code 4: degenerate (all-zero) baseline
    {
        std::ofstream dead(tmp / "dead.csv");
        dead << "week,infected\n1,0\n2,0\n";
    }
    pass &= expect(cli("analyze --config \"" + cfg + "\" --infected-csv \"" +
                           (tmp / "dead.csv").string() + "\" --out \"" +
                           (tmp / "y.csv").string() + '"',
                       tmp)
                           .exit_code == 4,
                   "exit 4 on a degenerate baseline");

    fs::remove_all(tmp);
    record("8. cli contract", pass,
           pass ? "golden output, exit codes 2/3/4, sidecar round trip, "
                  "determinism all verified"
                : "one or more cli checks failed",
           std::move(details));
}

} // namespace

int main() {
    criterion_reference_table();
    criterion_threshold_constants();
    criterion_integrator_invariants();
    criterion_epidemic_envelope();
    criterion_algebraic_identities();
    criterion_serial_closed_form();
    criterion_crossing_timeline();
    criterion_cli_contract();

    int failed = 0;
    for (const Criterion& c : g_results) {
        std::cout << (c.pass ? "PASS" : "FAIL") << "  " << c.name << " — "
                  << c.summary << '\n';
        for (const std::string& d : c.details) std::cout << "      " << d << '\n';
        if (!c.pass) ++failed;
    }
    std::cout << (g_results.size() - failed) << "/" << g_results.size()
              << " criteria passed\n";
    return failed == 0 ? 0 : 1;
}
