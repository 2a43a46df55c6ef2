#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "simgen/ml/student_t.hpp"
#include "simgen/ml/windows.hpp"

namespace simgen::ml {

struct ModelSpec {
    enum class Family { Linear, Knn, Tree, Forest, Nn };
    enum class Head { Mse, StudentT };

    Family family = Family::Linear;

    std::size_t k = 5;  // knn

    std::size_t max_depth = 10;  // tree / forest
    std::size_t min_leaf = 2;

    std::size_t n_trees = 50;  // forest
    double feature_fraction = 1.0;
    bool bootstrap = true;

    std::vector<std::size_t> hidden = {20, 20};  // nn
    Head head = Head::Mse;
    std::size_t epochs = 200;
    double learning_rate = 1e-3;
    std::size_t batch_size = 32;

    std::uint64_t seed = 0;

    std::string family_name() const;
    void validate() const;
};

nlohmann::json to_json(const ModelSpec& spec);
ModelSpec model_spec_from_json(const nlohmann::json& j);

/// A trained forecasting model: immutable, safe to share across threads.
class Model {
public:
    virtual ~Model() = default;

    /// Point forecast (the Student's-t head returns its location vector).
    virtual std::vector<double> predict(const std::vector<double>& x) const = 0;

    virtual bool probabilistic() const { return false; }
    virtual ForecastDistribution predict_distribution(const std::vector<double>& x) const {
        ForecastDistribution d;
        for (double mu : predict(x)) d.steps.push_back({mu, 1.0, 3.0});
        return d;
    }

    virtual nlohmann::json to_json() const = 0;
};

/// Train a model of the requested family. Deterministic given spec.seed.
std::unique_ptr<Model> fit_model(const WindowedDataset& ds, const ModelSpec& spec);

/// Reconstruct a trained model from its JSON form (see Model::to_json).
std::unique_ptr<Model> model_from_json(const nlohmann::json& j);

void save_model(const Model& model, const std::string& path);
std::unique_ptr<Model> load_model(const std::string& path);

}  // namespace simgen::ml
