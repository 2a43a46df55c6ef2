#pragma once

#include <stdexcept>
#include <vector>

namespace simgen::models {

struct SeriesTooShort : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct WindowTooLarge : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// First differences: out[k] = series[k+1] - series[k]. Length m-1.
std::vector<double> finite_difference(const std::vector<double>& series);

/// Trailing moving average over full windows only. Length m - window + 1.
std::vector<double> moving_average(const std::vector<double>& series, std::size_t window);

}  // namespace simgen::models
