#pragma once

#include "episcreen/core_types.hpp"

namespace episcreen {

/// Fixed-step integration scheme.
enum class Method {
    Rk4,   ///< classical 4th-order Runge-Kutta (default)
    Euler, ///< forward Euler, kept for step-size/accuracy comparisons
};

/// Fixed-step integration setup.  Samples are recorded on the grid
/// t = k * sample_every for k = 0..floor(t_end / sample_every); the
/// internal step is dt, shrunk if needed so a whole number of steps lands
/// exactly on each sample point.
struct IntegrationConfig {
    double dt = 0.01;
    double t_end = 0.0;
    double sample_every = 1.0;
    Method method = Method::Rk4;
};

/// Instantaneous SIR rates at `state`.  ds = -beta*i*s/n, di = -ds - gamma*i,
/// and dr = -(ds + di) so the three always sum to exactly zero.
struct Derivatives {
    double ds = 0.0;
    double di = 0.0;
    double dr = 0.0;
};

Derivatives derivatives(const SirState& state, const EpidemicParams& params);

/// Integrate the SIR system from the initial conditions in `params`.
/// Small negative compartment excursions (within 1e-12 * population) are
/// clamped to zero; anything worse, or a non-finite value, raises
/// NonFiniteStateError.  The returned Trajectory re-validates conservation
/// and monotonicity.
Trajectory integrate(const EpidemicParams& params, const IntegrationConfig& config);

/// Largest absolute residual of the final-size relation
///     s(t) = s(0) * exp(-r_naught * (r(t) - r(0)) / population)
/// over the trajectory's samples (compartments taken as fractions of the
/// population).  A conserved quantity of the exact flow, so the residual
/// measures integration error.
double final_size_residual(const Trajectory& trajectory);

namespace detail {

/// Clamp tiny negative values (>= -tol) to zero; throw NonFiniteStateError
/// for anything below -tol or non-finite.
double clamp_negative(double value, double tol);

} // namespace detail

} // namespace episcreen
