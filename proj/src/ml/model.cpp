#include "simgen/ml/model.hpp"

#include <fstream>

#include "simgen/ml/forest.hpp"
#include "simgen/ml/knn.hpp"
#include "simgen/ml/linear.hpp"
#include "simgen/ml/nn.hpp"
#include "simgen/ml/tree.hpp"
#include "simgen/util/json_util.hpp"

namespace simgen::ml {

using nlohmann::json;
using util::check_keys;
using util::ConfigError;

std::string ModelSpec::family_name() const {
    switch (family) {
        case Family::Linear: return "linear";
        case Family::Knn: return "knn";
        case Family::Tree: return "tree";
        case Family::Forest: return "forest";
        case Family::Nn: return head == Head::StudentT ? "nn_student_t" : "nn";
    }
    return "?";
}

void ModelSpec::validate() const {
    if (family == Family::Knn && k < 1)
        throw std::invalid_argument("ModelSpec: k must be >= 1");
    if ((family == Family::Tree || family == Family::Forest) && min_leaf < 1)
        throw std::invalid_argument("ModelSpec: min_leaf must be >= 1");
    if (family == Family::Forest) {
        if (n_trees < 1) throw std::invalid_argument("ModelSpec: n_trees must be >= 1");
        if (!(feature_fraction > 0.0 && feature_fraction <= 1.0))
            throw std::invalid_argument("ModelSpec: feature_fraction must be in (0, 1]");
    }
    if (family == Family::Nn) {
        if (epochs < 1 || batch_size < 1 || !(learning_rate > 0.0))
            throw std::invalid_argument("ModelSpec: invalid nn training parameters");
        for (std::size_t h : hidden)
            if (h < 1) throw std::invalid_argument("ModelSpec: hidden layer sizes must be >= 1");
    }
}

json to_json(const ModelSpec& s) {
    json j{{"family", ""}, {"seed", s.seed}};
    switch (s.family) {
        case ModelSpec::Family::Linear:
            j["family"] = "linear";
            break;
        case ModelSpec::Family::Knn:
            j["family"] = "knn";
            j["k"] = s.k;
            break;
        case ModelSpec::Family::Tree:
            j["family"] = "tree";
            j["max_depth"] = s.max_depth;
            j["min_leaf"] = s.min_leaf;
            break;
        case ModelSpec::Family::Forest:
            j["family"] = "forest";
            j["max_depth"] = s.max_depth;
            j["min_leaf"] = s.min_leaf;
            j["n_trees"] = s.n_trees;
            j["feature_fraction"] = s.feature_fraction;
            j["bootstrap"] = s.bootstrap;
            break;
        case ModelSpec::Family::Nn:
            j["family"] = "nn";
            j["hidden"] = s.hidden;
            j["head"] = s.head == ModelSpec::Head::StudentT ? "student_t" : "mse";
            j["epochs"] = s.epochs;
            j["learning_rate"] = s.learning_rate;
            j["batch_size"] = s.batch_size;
            break;
    }
    return j;
}

ModelSpec model_spec_from_json(const json& j) {
    const std::string ctx = "model spec";
    std::string family = util::require(j, "family", ctx).get<std::string>();
    ModelSpec s;
    if (family == "linear") {
        check_keys(j, {"family", "seed"}, ctx);
        s.family = ModelSpec::Family::Linear;
    } else if (family == "knn") {
        check_keys(j, {"family", "seed", "k"}, ctx);
        s.family = ModelSpec::Family::Knn;
        s.k = j.value("k", s.k);
    } else if (family == "tree") {
        check_keys(j, {"family", "seed", "max_depth", "min_leaf"}, ctx);
        s.family = ModelSpec::Family::Tree;
        s.max_depth = j.value("max_depth", s.max_depth);
        s.min_leaf = j.value("min_leaf", s.min_leaf);
    } else if (family == "forest") {
        check_keys(j, {"family", "seed", "max_depth", "min_leaf", "n_trees", "feature_fraction",
                       "bootstrap"},
                   ctx);
        s.family = ModelSpec::Family::Forest;
        s.max_depth = j.value("max_depth", s.max_depth);
        s.min_leaf = j.value("min_leaf", s.min_leaf);
        s.n_trees = j.value("n_trees", s.n_trees);
        s.feature_fraction = j.value("feature_fraction", s.feature_fraction);
        s.bootstrap = j.value("bootstrap", s.bootstrap);
    } else if (family == "nn") {
        check_keys(j, {"family", "seed", "hidden", "head", "epochs", "learning_rate",
                       "batch_size"},
                   ctx);
        s.family = ModelSpec::Family::Nn;
        s.hidden = j.value("hidden", s.hidden);
        std::string head = j.value("head", std::string("mse"));
        if (head == "student_t")
            s.head = ModelSpec::Head::StudentT;
        else if (head == "mse")
            s.head = ModelSpec::Head::Mse;
        else
            throw ConfigError(ctx + ": unknown head \"" + head + "\"");
        s.epochs = j.value("epochs", s.epochs);
        s.learning_rate = j.value("learning_rate", s.learning_rate);
        s.batch_size = j.value("batch_size", s.batch_size);
    } else {
        throw ConfigError(ctx + ": unknown family \"" + family + "\"");
    }
    s.seed = j.value("seed", std::uint64_t{0});
    s.validate();
    return s;
}

std::unique_ptr<Model> fit_model(const WindowedDataset& ds, const ModelSpec& spec) {
    spec.validate();
    switch (spec.family) {
        case ModelSpec::Family::Linear:
            return std::make_unique<LinearModel>(LinearModel::fit(ds));
        case ModelSpec::Family::Knn:
            return std::make_unique<KnnModel>(KnnModel::fit(ds, spec.k));
        case ModelSpec::Family::Tree:
            return std::make_unique<TreeModel>(TreeModel::fit(ds, spec.max_depth, spec.min_leaf));
        case ModelSpec::Family::Forest:
            return std::make_unique<ForestModel>(ForestModel::fit(ds, spec));
        case ModelSpec::Family::Nn:
            return std::make_unique<NnModel>(NnModel::fit(ds, spec));
    }
    throw std::logic_error("unreachable model family");
}

std::unique_ptr<Model> model_from_json(const json& j) {
    std::string family = j.at("family").get<std::string>();
    if (family == "linear") return std::make_unique<LinearModel>(LinearModel::from_json(j));
    if (family == "knn") return std::make_unique<KnnModel>(KnnModel::from_json(j));
    if (family == "tree") return std::make_unique<TreeModel>(TreeModel::from_json(j));
    if (family == "forest") return std::make_unique<ForestModel>(ForestModel::from_json(j));
    if (family == "nn") return std::make_unique<NnModel>(NnModel::from_json(j));
    throw ConfigError("saved model has unknown family \"" + family + "\"");
}

void save_model(const Model& model, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write model file " + path);
    out << model.to_json().dump(2) << '\n';
}

std::unique_ptr<Model> load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open model file " + path);
    json j;
    in >> j;
    return model_from_json(j);
}

}  // namespace simgen::ml
