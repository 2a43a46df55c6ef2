#include "simgen/ml/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace simgen::ml {

Metrics metric_nrmse(const std::vector<std::vector<double>>& y_true,
                     const std::vector<std::vector<double>>& y_pred) {
    if (y_true.size() != y_pred.size())
        throw LengthMismatch("metric_nrmse: row count mismatch");
    double sq = 0.0, lo = 0.0, hi = 0.0;
    std::size_t count = 0;
    bool first = true;
    for (std::size_t i = 0; i < y_true.size(); ++i) {
        if (y_true[i].size() != y_pred[i].size())
            throw LengthMismatch("metric_nrmse: row length mismatch");
        for (std::size_t j = 0; j < y_true[i].size(); ++j) {
            double d = y_pred[i][j] - y_true[i][j];
            sq += d * d;
            if (first) {
                lo = hi = y_true[i][j];
                first = false;
            } else {
                lo = std::min(lo, y_true[i][j]);
                hi = std::max(hi, y_true[i][j]);
            }
            ++count;
        }
    }
    if (count == 0) throw LengthMismatch("metric_nrmse: empty input");
    Metrics m;
    m.rmse = std::sqrt(sq / static_cast<double>(count));
    double range = hi - lo;
    m.nrmse = range > 0.0 ? m.rmse / range : m.rmse;
    return m;
}

}  // namespace simgen::ml
