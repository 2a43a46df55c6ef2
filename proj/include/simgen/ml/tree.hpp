#pragma once

#include "simgen/datagen/rng.hpp"
#include "simgen/ml/model.hpp"

namespace simgen::ml {

/// CART regression tree. Greedy splits minimize summed squared error over
/// both children, summed across output dimensions; leaves predict the mean
/// target. Thresholds sit at the midpoint between straddling samples.
class TreeModel final : public Model {
public:
    struct Node {
        int feature = -1;  // -1 marks a leaf
        double threshold = 0.0;
        int left = -1, right = -1;
        std::vector<double> value;  // leaf prediction
    };

    static TreeModel fit(const WindowedDataset& ds, std::size_t max_depth, std::size_t min_leaf);

    /// Forest building block: train on a row subset, sampling
    /// features_per_split candidate features at every split.
    static TreeModel fit_subset(const std::vector<std::vector<double>>& X,
                                const std::vector<std::vector<double>>& Y,
                                const std::vector<std::size_t>& rows, std::size_t max_depth,
                                std::size_t min_leaf, std::size_t features_per_split,
                                datagen::Rng* rng);

    std::vector<double> predict(const std::vector<double>& x) const override;
    nlohmann::json to_json() const override;
    static TreeModel from_json(const nlohmann::json& j);

    std::vector<Node> nodes;  // nodes[0] is the root
};

}  // namespace simgen::ml
