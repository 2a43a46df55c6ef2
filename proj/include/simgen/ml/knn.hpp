#pragma once

#include "simgen/ml/model.hpp"

namespace simgen::ml {

struct KTooLarge : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// k-nearest-neighbour regression on z-scored inputs; the prediction is the
/// mean target of the k closest training rows, ties broken by lower index.
class KnnModel final : public Model {
public:
    static KnnModel fit(const WindowedDataset& ds, std::size_t k);

    std::vector<double> predict(const std::vector<double>& x) const override;
    nlohmann::json to_json() const override;
    static KnnModel from_json(const nlohmann::json& j);

    std::size_t k = 1;
    std::vector<std::vector<double>> train_x;  // normalized
    std::vector<std::vector<double>> train_y;
    std::vector<double> x_mean, x_std;
};

}  // namespace simgen::ml
