#pragma once

#include <string>
#include <vector>

#include "simgen/ode/types.hpp"

namespace simgen::models {

struct IndexOutOfRange : std::out_of_range {
    using std::out_of_range::out_of_range;
};

/// A named, pure transform from a trajectory to a scalar time series.
/// Negative state values (solver undershoot) are clamped to zero here, never
/// in the solver state itself.
struct DerivedObservable {
    enum class Kind {
        Column,      // one state component as-is
        RatioSum,    // (y_i + y_j) / denominator
        Difference,  // first differences of one component (length m-1)
    };

    std::string name;
    Kind kind = Kind::Column;
    std::vector<std::size_t> indices;
    double denominator = 1.0;
    bool denominator_from_initial_total = false;

    static DerivedObservable column(std::string name, std::size_t i);
    static DerivedObservable ratio_sum(std::string name, std::size_t i, std::size_t j,
                                       double denominator);
    /// Ratio with denominator = sum of all components at the first grid point.
    static DerivedObservable ratio_sum_initial_total(std::string name, std::size_t i,
                                                     std::size_t j);
    static DerivedObservable difference(std::string name, std::size_t i);

    /// Number of points this observable drops from the front of the grid.
    std::size_t leading_trim() const { return kind == Kind::Difference ? 1 : 0; }

    std::vector<double> evaluate(const ode::Trajectory& traj) const;
};

}  // namespace simgen::models
