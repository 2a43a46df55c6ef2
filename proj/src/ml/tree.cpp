#include "simgen/ml/tree.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace simgen::ml {

namespace {

struct Builder {
    const std::vector<std::vector<double>>& X;
    const std::vector<std::vector<double>>& Y;
    std::size_t max_depth;
    std::size_t min_leaf;
    std::size_t features_per_split;
    datagen::Rng* rng;
    std::vector<TreeModel::Node> nodes;
    std::size_t n_features;
    std::size_t n_outputs;

    std::vector<double> mean_of(const std::vector<std::size_t>& rows) const {
        std::vector<double> m(n_outputs, 0.0);
        for (std::size_t r : rows)
            for (std::size_t o = 0; o < n_outputs; ++o) m[o] += Y[r][o];
        for (double& v : m) v /= static_cast<double>(rows.size());
        return m;
    }

    struct Split {
        std::size_t feature = 0;
        double threshold = 0.0;
        double sse = std::numeric_limits<double>::infinity();
        bool found = false;
    };

    // Best split of `rows` on `feature`: scan positions of sorted values,
    // tracking left/right sums per output incrementally.
    void scan_feature(std::vector<std::size_t>& rows, std::size_t feature, Split& best) const {
        std::sort(rows.begin(), rows.end(), [&](std::size_t a, std::size_t b) {
            return X[a][feature] < X[b][feature];
        });
        std::size_t n = rows.size();
        std::vector<double> total(n_outputs, 0.0), total_sq(n_outputs, 0.0);
        for (std::size_t r : rows)
            for (std::size_t o = 0; o < n_outputs; ++o) {
                total[o] += Y[r][o];
                total_sq[o] += Y[r][o] * Y[r][o];
            }
        std::vector<double> left(n_outputs, 0.0), left_sq(n_outputs, 0.0);
        for (std::size_t i = 0; i + 1 < n; ++i) {
            std::size_t r = rows[i];
            for (std::size_t o = 0; o < n_outputs; ++o) {
                left[o] += Y[r][o];
                left_sq[o] += Y[r][o] * Y[r][o];
            }
            std::size_t nl = i + 1, nr = n - nl;
            if (nl < min_leaf || nr < min_leaf) continue;
            double lo = X[rows[i]][feature], hi = X[rows[i + 1]][feature];
            if (lo == hi) continue;  // no boundary between equal values
            double sse = 0.0;
            for (std::size_t o = 0; o < n_outputs; ++o) {
                double rs = total[o] - left[o], rsq = total_sq[o] - left_sq[o];
                sse += left_sq[o] - left[o] * left[o] / static_cast<double>(nl);
                sse += rsq - rs * rs / static_cast<double>(nr);
            }
            if (sse < best.sse) {
                best = {feature, 0.5 * (lo + hi), sse, true};
            }
        }
    }

    int build(std::vector<std::size_t> rows, std::size_t depth) {
        int idx = static_cast<int>(nodes.size());
        nodes.emplace_back();
        nodes[idx].value = mean_of(rows);

        bool pure = true;
        for (std::size_t r : rows) {
            if (Y[r] != Y[rows.front()]) {
                pure = false;
                break;
            }
        }
        if (pure || depth >= max_depth || rows.size() < 2 * min_leaf) return idx;

        std::vector<std::size_t> candidates(n_features);
        std::iota(candidates.begin(), candidates.end(), 0);
        std::size_t n_cand = n_features;
        if (features_per_split < n_features && rng) {
            for (std::size_t i = 0; i < features_per_split; ++i) {
                std::size_t j = i + static_cast<std::size_t>(rng->below(n_features - i));
                std::swap(candidates[i], candidates[j]);
            }
            n_cand = features_per_split;
        }

        Split best;
        std::vector<std::size_t> scratch = rows;
        for (std::size_t c = 0; c < n_cand; ++c) scan_feature(scratch, candidates[c], best);
        if (!best.found) return idx;

        std::vector<std::size_t> lrows, rrows;
        for (std::size_t r : rows)
            (X[r][best.feature] <= best.threshold ? lrows : rrows).push_back(r);
        nodes[idx].feature = static_cast<int>(best.feature);
        nodes[idx].threshold = best.threshold;
        int l = build(std::move(lrows), depth + 1);
        int r = build(std::move(rrows), depth + 1);
        nodes[idx].left = l;
        nodes[idx].right = r;
        return idx;
    }
};

}  // namespace

TreeModel TreeModel::fit(const WindowedDataset& ds, std::size_t max_depth, std::size_t min_leaf) {
    std::vector<std::size_t> rows(ds.size());
    std::iota(rows.begin(), rows.end(), 0);
    return fit_subset(ds.X, ds.Y, rows, max_depth, min_leaf, ds.w_in, nullptr);
}

TreeModel TreeModel::fit_subset(const std::vector<std::vector<double>>& X,
                                const std::vector<std::vector<double>>& Y,
                                const std::vector<std::size_t>& rows, std::size_t max_depth,
                                std::size_t min_leaf, std::size_t features_per_split,
                                datagen::Rng* rng) {
    if (rows.empty()) throw std::invalid_argument("TreeModel: empty training set");
    if (min_leaf < 1) throw std::invalid_argument("TreeModel: min_leaf must be >= 1");
    Builder b{X, Y, max_depth, min_leaf, features_per_split, rng, {}, X.front().size(),
              Y.front().size()};
    b.build(rows, 0);
    TreeModel m;
    m.nodes = std::move(b.nodes);
    return m;
}

std::vector<double> TreeModel::predict(const std::vector<double>& x) const {
    int idx = 0;
    while (nodes[idx].feature >= 0)
        idx = x[static_cast<std::size_t>(nodes[idx].feature)] <= nodes[idx].threshold
                  ? nodes[idx].left
                  : nodes[idx].right;
    return nodes[idx].value;
}

nlohmann::json TreeModel::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& n : nodes)
        arr.push_back({{"feature", n.feature},
                       {"threshold", n.threshold},
                       {"left", n.left},
                       {"right", n.right},
                       {"value", n.value}});
    return {{"family", "tree"}, {"nodes", arr}};
}

TreeModel TreeModel::from_json(const nlohmann::json& j) {
    TreeModel m;
    for (const auto& e : j.at("nodes")) {
        Node n;
        n.feature = e.at("feature").get<int>();
        n.threshold = e.at("threshold").get<double>();
        n.left = e.at("left").get<int>();
        n.right = e.at("right").get<int>();
        n.value = e.at("value").get<std::vector<double>>();
        m.nodes.push_back(std::move(n));
    }
    return m;
}

}  // namespace simgen::ml
