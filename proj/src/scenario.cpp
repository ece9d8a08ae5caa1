#include "episcreen/scenario.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

namespace episcreen {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

[[noreturn]] void bad(const std::string& msg) { throw ConfigError(msg); }

double to_number(const std::string& key, const std::string& text) {
    double value = 0.0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end)
        bad("key '" + key + "' has a non-numeric value '" + text + "'");
    return value;
}

class KeyValues {
public:
    void insert(const std::string& key, const std::string& value, int line_no) {
        if (values_.count(key))
            bad("duplicate key '" + key + "' on line " + std::to_string(line_no));
        values_[key] = value;
    }

    std::optional<double> number(const std::string& key) {
        auto it = values_.find(key);
        if (it == values_.end()) return std::nullopt;
        used_.insert({key, true});
        return to_number(key, it->second);
    }

    double required_number(const std::string& key) {
        auto v = number(key);
        if (!v) bad("missing required key '" + key + "'");
        return *v;
    }

    std::optional<std::string> word(const std::string& key) {
        auto it = values_.find(key);
        if (it == values_.end()) return std::nullopt;
        used_.insert({key, true});
        return it->second;
    }

    bool has(const std::string& key) const { return values_.count(key) != 0; }

    void check_all_used() const {
        for (const auto& [key, value] : values_)
            if (!used_.count(key)) bad("unknown key '" + key + "'");
    }

private:
    std::map<std::string, std::string> values_;
    std::map<std::string, bool> used_;
};

} // namespace

Scenario parse_scenario(std::istream& in) {
    KeyValues kv;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            bad("line " + std::to_string(line_no) + " is not of the form key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            bad("line " + std::to_string(line_no) + " has an empty key or value");
        if (value.find('=') != std::string::npos)
            bad("line " + std::to_string(line_no) + " has more than one '='");
        kv.insert(key, value, line_no);
    }

    TestCharacteristics test(kv.required_number("sensitivity"),
                             kv.required_number("specificity"));

    const bool explicit_rates = kv.has("beta") || kv.has("gamma");
    const bool calibrated = kv.has("s_inf") || kv.has("early_growth");
    if (explicit_rates == calibrated)
        bad("specify exactly one epidemic style: beta+gamma or s_inf+early_growth");

    const double i0 = kv.required_number("i0");
    std::variant<EpidemicParams, CalibrationTargets> epidemic{
        std::in_place_type<CalibrationTargets>};
    if (explicit_rates) {
        const double beta = kv.required_number("beta");
        const double gamma = kv.required_number("gamma");
        const double population = kv.number("population").value_or(1.0);
        const double r0 = kv.number("r0").value_or(0.0);
        const double s0 = kv.number("s0").value_or(population - i0 - r0);
        epidemic = EpidemicParams(beta, gamma, population, s0, i0, r0);
    } else {
        if (kv.has("population"))
            bad("population is fixed to 1 when calibrating from fractions");
        if (kv.has("r0"))
            bad("r0 is implied by s0 and i0 when calibrating");
        CalibrationTargets targets;
        targets.s_inf = kv.required_number("s_inf");
        targets.early_growth = kv.required_number("early_growth");
        targets.i0 = i0;
        targets.s0 = kv.number("s0").value_or(1.0 - i0);
        targets.validate();
        epidemic = targets;
    }

    IntegrationConfig integration;
    integration.t_end = kv.required_number("weeks");
    integration.dt = kv.number("dt").value_or(0.01);
    integration.sample_every = kv.number("sample_every").value_or(1.0);
    if (auto method = kv.word("method")) {
        if (*method == "rk4")
            integration.method = Method::Rk4;
        else if (*method == "euler")
            integration.method = Method::Euler;
        else
            bad("method must be rk4 or euler, got '" + *method + "'");
    }

    PrevalenceSource source = PrevalenceSource::InfectedFraction;
    if (auto word = kv.word("prevalence_source")) {
        if (*word == "infected_fraction")
            source = PrevalenceSource::InfectedFraction;
        else if (*word == "incidence_rate")
            source = PrevalenceSource::IncidenceRate;
        else
            bad("prevalence_source must be infected_fraction or incidence_rate");
    }

    Baseline baseline = Baseline::peak();
    if (auto word = kv.word("baseline")) {
        if (*word == "peak") {
            baseline = Baseline::peak();
        } else if (*word == "first") {
            baseline = Baseline::first_sample();
        } else if (*word == "explicit") {
            baseline = Baseline::explicit_value(kv.required_number("baseline_phi"));
        } else {
            bad("baseline must be peak, first or explicit");
        }
    } else if (kv.has("baseline_phi")) {
        bad("baseline_phi requires baseline = explicit");
    }

    const double n_max_raw = kv.number("n_max").value_or(50.0);
    const int n_max = static_cast<int>(n_max_raw);
    if (n_max_raw != n_max || n_max < 1) bad("n_max must be a positive integer");
    SerialTestPolicy policy = SerialTestPolicy::at_threshold(n_max);
    if (auto word = kv.word("target")) {
        if (*word != "threshold")
            policy = SerialTestPolicy::fixed(to_number("target", *word), n_max);
    }

    kv.check_all_used();
    return Scenario{test, epidemic, integration, source, baseline, policy};
}

Scenario parse_scenario_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) bad("cannot open scenario file '" + path.string() + "'");
    return parse_scenario(in);
}

Scenario reference_scenario() {
    CalibrationTargets targets;
    targets.s_inf = 0.0022;
    targets.s0 = 0.9999;
    targets.i0 = 0.0001;
    targets.early_growth = 2.1;
    IntegrationConfig integration;
    integration.dt = 0.01;
    integration.t_end = 34.0;
    return Scenario{TestCharacteristics(0.95, 0.99), targets, integration,
                    PrevalenceSource::InfectedFraction, Baseline::peak(),
                    SerialTestPolicy::at_threshold()};
}

EpidemicParams resolve_epidemic(const Scenario& scenario) {
    if (const auto* params = std::get_if<EpidemicParams>(&scenario.epidemic))
        return *params;
    const auto& targets = std::get<CalibrationTargets>(scenario.epidemic);
    const FittedRates rates = fit_rates(targets);
    // The first observed week is week 1; stepping the seed back by one growth
    // factor makes the integration start at week 0 with i(1) ~= i0.
    const double i_start = targets.i0 / targets.early_growth;
    const double r_start = std::max(0.0, targets.r0());
    return EpidemicParams(rates.beta, rates.gamma, 1.0,
                          1.0 - i_start - r_start, i_start, r_start);
}

} // namespace episcreen
