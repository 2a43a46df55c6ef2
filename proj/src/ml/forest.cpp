#include "simgen/ml/forest.hpp"

#include <cmath>
#include <numeric>

#include "simgen/util/parallel.hpp"

namespace simgen::ml {

ForestModel ForestModel::fit(const WindowedDataset& ds, const ModelSpec& spec) {
    if (spec.n_trees < 1) throw std::invalid_argument("ForestModel: n_trees must be >= 1");
    if (!(spec.feature_fraction > 0.0 && spec.feature_fraction <= 1.0))
        throw std::invalid_argument("ForestModel: feature_fraction must be in (0, 1]");
    std::size_t n = ds.size();
    auto features_per_split = static_cast<std::size_t>(
        std::ceil(spec.feature_fraction * static_cast<double>(ds.w_in)));

    ForestModel m;
    m.trees.resize(spec.n_trees);
    util::parallel_for(spec.n_trees, [&](std::size_t t) {
        datagen::Rng rng(datagen::seed_for(spec.seed, t));
        std::vector<std::size_t> rows(n);
        if (spec.bootstrap) {
            for (std::size_t i = 0; i < n; ++i)
                rows[i] = static_cast<std::size_t>(rng.below(n));
        } else {
            std::iota(rows.begin(), rows.end(), 0);
        }
        m.trees[t] = TreeModel::fit_subset(ds.X, ds.Y, rows, spec.max_depth, spec.min_leaf,
                                           features_per_split, &rng);
    });
    return m;
}

std::vector<double> ForestModel::predict(const std::vector<double>& x) const {
    std::vector<double> out = trees.front().predict(x);
    for (std::size_t t = 1; t < trees.size(); ++t) {
        auto p = trees[t].predict(x);
        for (std::size_t o = 0; o < out.size(); ++o) out[o] += p[o];
    }
    for (double& v : out) v /= static_cast<double>(trees.size());
    return out;
}

nlohmann::json ForestModel::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& t : trees) arr.push_back(t.to_json());
    return {{"family", "forest"}, {"trees", arr}};
}

ForestModel ForestModel::from_json(const nlohmann::json& j) {
    ForestModel m;
    for (const auto& e : j.at("trees")) m.trees.push_back(TreeModel::from_json(e));
    return m;
}

}  // namespace simgen::ml
