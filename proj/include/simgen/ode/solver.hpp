#pragma once

#include <span>

#include "simgen/ode/system.hpp"
#include "simgen/ode/types.hpp"

namespace simgen::ode {

/// Adaptive Dormand-Prince RK45 with PI step-size control and 4th-order
/// dense output at the requested grid points. Setting h_min == h_max forces
/// fixed steps with error control disabled.
Trajectory integrate(const OdeSystem& system, std::span<const double> params,
                     const StateVector& y0, const TimeGrid& grid, const SolverConfig& cfg);

/// Fixed-step implicit trapezoidal rule with damped Newton iteration,
/// intended as the stiff fallback. Step size is cfg.h_init (shrunk to land
/// exactly on grid points); Newton tolerance is cfg.atol, at most 25
/// iterations per step. Uses the system Jacobian when available, otherwise
/// central finite differences with step 1e-6 * (1 + |y_i|).
Trajectory integrate_implicit(const OdeSystem& system, std::span<const double> params,
                              const StateVector& y0, const TimeGrid& grid,
                              const SolverConfig& cfg);

struct SteadyStateResult {
    StateVector state;
    double t = 0.0;
    bool converged = false;
};

/// Integrate from t = 0 until ||rhs||_inf < tol or t_max is reached.
SteadyStateResult find_steady_state(const OdeSystem& system, std::span<const double> params,
                                    const StateVector& y0, double tol, double t_max,
                                    const SolverConfig& cfg = {});

}  // namespace simgen::ode
