#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

namespace simgen::ml {

struct LengthMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct Metrics {
    double rmse = 0.0;
    double nrmse = 0.0;
    std::optional<double> mean_nll;  // Student's-t models only
};

/// RMSE over all entries; NRMSE divides by the range of y_true (falls back
/// to plain RMSE for constant targets).
Metrics metric_nrmse(const std::vector<std::vector<double>>& y_true,
                     const std::vector<std::vector<double>>& y_pred);

}  // namespace simgen::ml
