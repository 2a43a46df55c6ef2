#include "simgen/models/preprocess.hpp"

namespace simgen::models {

std::vector<double> finite_difference(const std::vector<double>& series) {
    if (series.size() < 2)
        throw SeriesTooShort("finite_difference: need at least 2 points");
    std::vector<double> out(series.size() - 1);
    for (std::size_t k = 0; k + 1 < series.size(); ++k) out[k] = series[k + 1] - series[k];
    return out;
}

std::vector<double> moving_average(const std::vector<double>& series, std::size_t window) {
    if (window < 1 || window > series.size())
        throw WindowTooLarge("moving_average: window must be in [1, series length]");
    std::vector<double> out(series.size() - window + 1);
    for (std::size_t k = 0; k < out.size(); ++k) {
        double sum = 0.0;
        for (std::size_t j = 0; j < window; ++j) sum += series[k + j];
        out[k] = sum / static_cast<double>(window);
    }
    return out;
}

}  // namespace simgen::models
