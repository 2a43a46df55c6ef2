#include "simgen/ml/knn.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace simgen::ml {

KnnModel KnnModel::fit(const WindowedDataset& ds, std::size_t k) {
    if (k < 1) throw std::invalid_argument("KnnModel: k must be >= 1");
    if (k > ds.size())
        throw KTooLarge("KnnModel: k = " + std::to_string(k) + " exceeds training size " +
                        std::to_string(ds.size()));
    KnnModel m;
    m.k = k;
    m.x_mean = ds.x_mean;
    m.x_std = ds.x_std;
    m.train_x.reserve(ds.size());
    for (const auto& row : ds.X) m.train_x.push_back(ds.normalize(row));
    m.train_y = ds.Y;
    return m;
}

std::vector<double> KnnModel::predict(const std::vector<double>& x) const {
    if (x.size() != x_mean.size())
        throw std::invalid_argument("KnnModel::predict: feature count mismatch");
    std::vector<double> q(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) q[j] = (x[j] - x_mean[j]) / x_std[j];

    std::vector<std::pair<double, std::size_t>> dist(train_x.size());
    for (std::size_t i = 0; i < train_x.size(); ++i) {
        double d = 0.0;
        for (std::size_t j = 0; j < q.size(); ++j) {
            double diff = train_x[i][j] - q[j];
            d += diff * diff;
        }
        dist[i] = {d, i};
    }
    std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k), dist.end());

    std::vector<double> out(train_y.front().size(), 0.0);
    for (std::size_t n = 0; n < k; ++n) {
        const auto& y = train_y[dist[n].second];
        for (std::size_t o = 0; o < out.size(); ++o) out[o] += y[o];
    }
    for (double& v : out) v /= static_cast<double>(k);
    return out;
}

nlohmann::json KnnModel::to_json() const {
    return {{"family", "knn"}, {"k", k},           {"train_x", train_x},
            {"train_y", train_y}, {"x_mean", x_mean}, {"x_std", x_std}};
}

KnnModel KnnModel::from_json(const nlohmann::json& j) {
    KnnModel m;
    m.k = j.at("k").get<std::size_t>();
    m.train_x = j.at("train_x").get<std::vector<std::vector<double>>>();
    m.train_y = j.at("train_y").get<std::vector<std::vector<double>>>();
    m.x_mean = j.at("x_mean").get<std::vector<double>>();
    m.x_std = j.at("x_std").get<std::vector<double>>();
    return m;
}

}  // namespace simgen::ml
