#pragma once

#include <stdexcept>
#include <vector>

namespace simgen::ml {

struct SeriesTooShort : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Supervised sliding-window view of a set of series: each row pairs w_in
/// consecutive inputs with the following w_out targets. Normalization stats
/// are per input column, computed from X (std of 0 falls back to identity
/// scaling).
struct WindowedDataset {
    std::size_t w_in = 0, w_out = 0;
    std::vector<std::vector<double>> X;
    std::vector<std::vector<double>> Y;
    std::vector<double> x_mean, x_std;

    std::size_t size() const { return X.size(); }

    std::vector<double> normalize(const std::vector<double>& x) const {
        std::vector<double> out(x.size());
        for (std::size_t j = 0; j < x.size(); ++j) out[j] = (x[j] - x_mean[j]) / x_std[j];
        return out;
    }

    /// Append all windows from other (used for augmentation); stats are
    /// recomputed.
    void append(const WindowedDataset& other);
};

WindowedDataset make_windows(const std::vector<std::vector<double>>& series_set,
                             std::size_t w_in, std::size_t w_out, std::size_t stride = 1);

}  // namespace simgen::ml
