#include "simgen/pipelines/config.hpp"

#include <algorithm>

#include "simgen/util/json_util.hpp"

namespace simgen::pipelines {

using nlohmann::json;
using util::check_keys;
using util::ConfigError;
using util::require;

void ExperimentConfig::validate() const {
    if (models.empty()) throw ConfigError("experiment config: at least one model required");
    for (const auto& m : models) m.validate();
    if (w_in < 1 || w_out < 1)
        throw ConfigError("experiment config: w_in and w_out must be >= 1");
    if (!(test_fraction > 0.0 && test_fraction < 1.0))
        throw ConfigError("experiment config: test_fraction must be in (0, 1)");
    if (output_dir.empty()) throw ConfigError("experiment config: output_dir required");
    if (kind == Kind::DataNeeds) {
        if (dataset_sizes.empty())
            throw ConfigError("experiment config: dataset_sizes required for data_needs");
        if (!std::is_sorted(dataset_sizes.begin(), dataset_sizes.end()))
            throw ConfigError("experiment config: dataset_sizes must be sorted ascending");
        if (dataset_sizes.front() < 1)
            throw ConfigError("experiment config: dataset sizes must be >= 1");
    } else {
        if (real_data_path.empty())
            throw ConfigError("experiment config: real_data_path required for augmentation");
        if (train_cutoff_index < w_in + w_out)
            throw ConfigError(
                "experiment config: train_cutoff_index leaves fewer than w_in + w_out points");
        if (smoothing_window < 1)
            throw ConfigError("experiment config: smoothing_window must be >= 1");
    }
}

json to_json(const ExperimentConfig& c) {
    json j;
    j["schema"] = 1;
    j["kind"] = c.kind == ExperimentConfig::Kind::DataNeeds ? "data_needs" : "augmentation";
    j["generation"] = datagen::to_json(c.generation);
    j["w_in"] = c.w_in;
    j["w_out"] = c.w_out;
    json models = json::array();
    for (const auto& m : c.models) models.push_back(ml::to_json(m));
    j["models"] = models;
    if (!c.target_column.empty()) j["target_column"] = c.target_column;
    if (c.kind == ExperimentConfig::Kind::DataNeeds) {
        j["dataset_sizes"] = c.dataset_sizes;
    } else {
        j["real_data_path"] = c.real_data_path;
        j["train_cutoff_index"] = c.train_cutoff_index;
        j["smoothing_window"] = c.smoothing_window;
    }
    j["test_fraction"] = c.test_fraction;
    j["master_seed"] = c.master_seed;
    j["output_dir"] = c.output_dir.string();
    return j;
}

ExperimentConfig experiment_config_from_json(const json& j) {
    const std::string ctx = "experiment config";
    check_keys(j,
               {"schema", "kind", "generation", "w_in", "w_out", "models", "target_column",
                "dataset_sizes", "real_data_path", "train_cutoff_index", "smoothing_window",
                "test_fraction", "master_seed", "output_dir"},
               ctx);
    if (require(j, "schema", ctx).get<int>() != 1)
        throw ConfigError(ctx + ": unsupported schema version (expected 1)");

    ExperimentConfig c;
    std::string kind = require(j, "kind", ctx).get<std::string>();
    if (kind == "data_needs")
        c.kind = ExperimentConfig::Kind::DataNeeds;
    else if (kind == "augmentation")
        c.kind = ExperimentConfig::Kind::Augmentation;
    else
        throw ConfigError(ctx + ": unknown kind \"" + kind + "\"");

    c.generation = datagen::generation_config_from_json(require(j, "generation", ctx));
    c.w_in = j.value("w_in", c.w_in);
    c.w_out = j.value("w_out", c.w_out);
    for (const auto& m : require(j, "models", ctx)) c.models.push_back(ml::model_spec_from_json(m));
    c.target_column = j.value("target_column", std::string{});
    if (j.contains("dataset_sizes"))
        c.dataset_sizes = j.at("dataset_sizes").get<std::vector<std::size_t>>();
    c.real_data_path = j.value("real_data_path", std::string{});
    c.train_cutoff_index = j.value("train_cutoff_index", std::size_t{0});
    c.smoothing_window = j.value("smoothing_window", c.smoothing_window);
    c.test_fraction = j.value("test_fraction", c.test_fraction);
    c.master_seed = j.value("master_seed", c.generation.master_seed);
    c.output_dir = require(j, "output_dir", ctx).get<std::string>();
    c.validate();
    return c;
}

}  // namespace simgen::pipelines
