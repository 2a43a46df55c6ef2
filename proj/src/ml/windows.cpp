#include "simgen/ml/windows.hpp"

#include <cmath>

namespace simgen::ml {

namespace {

void compute_stats(WindowedDataset& ds) {
    ds.x_mean.assign(ds.w_in, 0.0);
    ds.x_std.assign(ds.w_in, 1.0);
    if (ds.X.empty()) return;
    double n = static_cast<double>(ds.X.size());
    for (const auto& row : ds.X)
        for (std::size_t j = 0; j < ds.w_in; ++j) ds.x_mean[j] += row[j];
    for (std::size_t j = 0; j < ds.w_in; ++j) ds.x_mean[j] /= n;
    std::vector<double> var(ds.w_in, 0.0);
    for (const auto& row : ds.X)
        for (std::size_t j = 0; j < ds.w_in; ++j) {
            double d = row[j] - ds.x_mean[j];
            var[j] += d * d;
        }
    for (std::size_t j = 0; j < ds.w_in; ++j) {
        double sd = std::sqrt(var[j] / n);
        ds.x_std[j] = sd > 0.0 ? sd : 1.0;
    }
}

}  // namespace

void WindowedDataset::append(const WindowedDataset& other) {
    if (other.w_in != w_in || other.w_out != w_out)
        throw std::invalid_argument("WindowedDataset::append: window shape mismatch");
    X.insert(X.end(), other.X.begin(), other.X.end());
    Y.insert(Y.end(), other.Y.begin(), other.Y.end());
    compute_stats(*this);
}

WindowedDataset make_windows(const std::vector<std::vector<double>>& series_set,
                             std::size_t w_in, std::size_t w_out, std::size_t stride) {
    if (w_in < 1 || w_out < 1 || stride < 1)
        throw std::invalid_argument("make_windows: w_in, w_out, stride must be >= 1");
    WindowedDataset ds;
    ds.w_in = w_in;
    ds.w_out = w_out;
    for (const auto& series : series_set) {
        if (series.size() < w_in + w_out)
            throw SeriesTooShort("make_windows: series of length " +
                                 std::to_string(series.size()) + " is shorter than w_in + w_out");
        for (std::size_t off = 0; off + w_in + w_out <= series.size(); off += stride) {
            ds.X.emplace_back(series.begin() + off, series.begin() + off + w_in);
            ds.Y.emplace_back(series.begin() + off + w_in, series.begin() + off + w_in + w_out);
        }
    }
    compute_stats(ds);
    return ds;
}

}  // namespace simgen::ml
