#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "simgen/datagen/generate.hpp"
#include "simgen/ml/model.hpp"

namespace simgen::pipelines {

struct ExperimentConfig {
    enum class Kind { DataNeeds, Augmentation };

    Kind kind = Kind::DataNeeds;
    datagen::GenerationConfig generation;
    std::size_t w_in = 5, w_out = 3;
    std::vector<ml::ModelSpec> models;
    std::string target_column;  // empty = first dataset column

    std::vector<std::size_t> dataset_sizes;  // data_needs, ascending

    std::string real_data_path;  // augmentation
    std::size_t train_cutoff_index = 0;
    std::size_t smoothing_window = 7;

    double test_fraction = 0.2;
    std::uint64_t master_seed = 0;
    std::filesystem::path output_dir;

    void validate() const;
};

nlohmann::json to_json(const ExperimentConfig& config);
ExperimentConfig experiment_config_from_json(const nlohmann::json& j);

}  // namespace simgen::pipelines
