#include "episcreen/sir_integrator.hpp"

#include <cmath>
#include <utility>
#include <vector>

namespace episcreen {

Derivatives derivatives(const SirState& state, const EpidemicParams& params) {
    const double infection =
        params.beta() * state.i * state.s / params.population();
    const double ds = -infection;
    const double di = infection - params.gamma() * state.i;
    return {ds, di, -(ds + di)};
}

namespace detail {

double clamp_negative(double value, double tol) {
    if (!std::isfinite(value))
        throw NonFiniteStateError("integration produced a non-finite compartment");
    if (value >= 0.0) return value;
    if (value >= -tol) return 0.0;
    throw NonFiniteStateError(
        "integration drove a compartment negative; reduce the step size");
}

} // namespace detail

namespace {

struct Rates {
    double s, i, r;
};

Rates eval(const EpidemicParams& p, double s, double i) {
    const Derivatives d = derivatives(SirState{0.0, s, i, 0.0}, p);
    return {d.ds, d.di, d.dr};
}

void step_euler(const EpidemicParams& p, double h, double& s, double& i, double& r) {
    const Rates k = eval(p, s, i);
    s += h * k.s;
    i += h * k.i;
    r += h * k.r;
}

void step_rk4(const EpidemicParams& p, double h, double& s, double& i, double& r) {
    const Rates k1 = eval(p, s, i);
    const Rates k2 = eval(p, s + 0.5 * h * k1.s, i + 0.5 * h * k1.i);
    const Rates k3 = eval(p, s + 0.5 * h * k2.s, i + 0.5 * h * k2.i);
    const Rates k4 = eval(p, s + h * k3.s, i + h * k3.i);
    s += h / 6.0 * (k1.s + 2.0 * k2.s + 2.0 * k3.s + k4.s);
    i += h / 6.0 * (k1.i + 2.0 * k2.i + 2.0 * k3.i + k4.i);
    r += h / 6.0 * (k1.r + 2.0 * k2.r + 2.0 * k3.r + k4.r);
}

} // namespace

Trajectory integrate(const EpidemicParams& params, const IntegrationConfig& config) {
    if (!std::isfinite(config.dt) || config.dt <= 0.0)
        throw ValidationError("dt must be positive");
    if (!std::isfinite(config.t_end) || config.t_end < 0.0)
        throw ValidationError("t_end must be >= 0");
    if (!std::isfinite(config.sample_every) || config.sample_every <= 0.0)
        throw ValidationError("sample_every must be positive");

    const double n_samples_exact = config.t_end / config.sample_every;
    const int n_samples = static_cast<int>(std::floor(n_samples_exact + 1e-9));
    // Whole number of equal steps per sample interval, each no larger than dt.
    const int steps_per_sample = std::max(
        1, static_cast<int>(std::ceil(config.sample_every / config.dt - 1e-9)));
    const double h = config.sample_every / steps_per_sample;
    const double clamp_tol = 1e-12 * params.population();

    double s = params.s0();
    double i = params.i0();
    double r = params.r0();
    std::vector<SirState> samples;
    samples.reserve(static_cast<std::size_t>(n_samples) + 1);
    samples.push_back({0.0, s, i, r});
    for (int k = 1; k <= n_samples; ++k) {
        for (int step = 0; step < steps_per_sample; ++step) {
            if (config.method == Method::Rk4)
                step_rk4(params, h, s, i, r);
            else
                step_euler(params, h, s, i, r);
            s = detail::clamp_negative(s, clamp_tol);
            i = detail::clamp_negative(i, clamp_tol);
            r = detail::clamp_negative(r, clamp_tol);
        }
        samples.push_back({k * config.sample_every, s, i, r});
    }
    return Trajectory(params, std::move(samples));
}

double final_size_residual(const Trajectory& trajectory) {
    const EpidemicParams& p = trajectory.params();
    const double n = p.population();
    const double r_naught = p.r_naught();
    const double s0_frac = p.s0() / n;
    const double r0_frac = p.r0() / n;
    double worst = 0.0;
    for (const SirState& st : trajectory.samples()) {
        const double predicted =
            s0_frac * std::exp(-r_naught * (st.r / n - r0_frac));
        worst = std::max(worst, std::abs(st.s / n - predicted));
    }
    return worst;
}

} // namespace episcreen
