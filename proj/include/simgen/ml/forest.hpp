#pragma once

#include "simgen/ml/tree.hpp"

namespace simgen::ml {

/// Bagged CART ensemble: each tree trains on a seeded bootstrap resample and
/// searches a random feature subset at every split. Prediction is the mean
/// over trees.
class ForestModel final : public Model {
public:
    static ForestModel fit(const WindowedDataset& ds, const ModelSpec& spec);

    std::vector<double> predict(const std::vector<double>& x) const override;
    nlohmann::json to_json() const override;
    static ForestModel from_json(const nlohmann::json& j);

    std::vector<TreeModel> trees;
};

}  // namespace simgen::ml
