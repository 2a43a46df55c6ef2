#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace simgen::ode {

// Solver error hierarchy. Each condition named so callers can react
// (e.g. retry with the implicit solver on StepUnderflow).
struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct StepLimitExceeded : SolverError {
    using SolverError::SolverError;
};
struct StepUnderflow : SolverError {
    using SolverError::SolverError;
};
struct NonFiniteRhs : SolverError {
    using SolverError::SolverError;
};
struct NewtonDivergence : SolverError {
    using SolverError::SolverError;
};

using StateVector = std::vector<double>;

/// Output grid: states are reported at exactly these times.
struct TimeGrid {
    double t0 = 0.0;
    std::vector<double> points;

    void validate() const {
        if (points.empty())
            throw std::invalid_argument("TimeGrid: at least one output point required");
        double prev = t0;
        for (std::size_t i = 0; i < points.size(); ++i) {
            if (!std::isfinite(points[i]))
                throw std::invalid_argument("TimeGrid: non-finite grid point");
            if (i == 0 ? points[i] < prev : points[i] <= prev)
                throw std::invalid_argument("TimeGrid: points must be strictly increasing and >= t0");
            prev = points[i];
        }
    }

    double span() const { return points.back() - t0; }

    static TimeGrid linspace(double t0, double t1, std::size_t n) {
        TimeGrid g;
        g.t0 = t0;
        g.points.resize(n);
        for (std::size_t i = 0; i < n; ++i)
            g.points[i] = t0 + (t1 - t0) * static_cast<double>(i + 1) / static_cast<double>(n);
        return g;
    }
};

struct SolverConfig {
    double rtol = 1e-6;
    double atol = 1e-9;
    double h_init = 0.0;  // 0 => 1e-3 * grid span
    double h_min = 1e-12;
    double h_max = 0.0;  // 0 => grid span
    std::size_t max_steps = 1'000'000;

    void validate() const {
        if (rtol < 1e-14) throw std::invalid_argument("SolverConfig: rtol must be >= 1e-14");
        if (atol <= 0.0) throw std::invalid_argument("SolverConfig: atol must be positive");
        if (h_min <= 0.0) throw std::invalid_argument("SolverConfig: h_min must be positive");
        if (h_init != 0.0 && h_init < h_min)
            throw std::invalid_argument("SolverConfig: h_init < h_min");
        if (h_max != 0.0 && h_max < h_init)
            throw std::invalid_argument("SolverConfig: h_max < h_init");
        if (max_steps == 0) throw std::invalid_argument("SolverConfig: max_steps must be positive");
    }
};

struct Trajectory {
    TimeGrid grid;
    std::vector<StateVector> states;  // one row per grid point

    std::size_t size() const { return states.size(); }
    std::size_t dimension() const { return states.empty() ? 0 : states.front().size(); }

    /// Extract one state component as a time series.
    std::vector<double> column(std::size_t j) const {
        std::vector<double> out(states.size());
        for (std::size_t i = 0; i < states.size(); ++i) out[i] = states[i].at(j);
        return out;
    }
};

}  // namespace simgen::ode
