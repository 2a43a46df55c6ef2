#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "simgen/datagen/distribution.hpp"
#include "simgen/datagen/noise.hpp"
#include "simgen/datagen/sparsify.hpp"
#include "simgen/models/observable.hpp"
#include "simgen/ode/types.hpp"

namespace simgen::datagen {

/// Declarative recipe for a synthetic dataset. Corruption order is fixed:
/// observables -> noise -> sparsify.
struct GenerationConfig {
    std::string system_id;
    std::map<std::string, DistributionSpec> params;
    std::map<std::string, DistributionSpec> initial_conditions;
    ode::TimeGrid grid;
    ode::SolverConfig solver;
    NoiseSpec noise;
    std::optional<SparsifierSpec> sparsifier;
    std::size_t n_series = 1;
    std::uint64_t master_seed = 0;
    std::vector<models::DerivedObservable> observables;  // empty = one column per state

    void validate() const;
};

struct Series {
    std::uint64_t index = 0;
    std::uint64_t seed = 0;
    std::map<std::string, double> sampled_params;
    std::map<std::string, double> sampled_initial;
    std::vector<double> times;
    std::vector<std::vector<double>> columns;  // one vector per column, same length as times

    bool operator==(const Series&) const = default;
};

struct Dataset {
    std::uint64_t master_seed = 0;
    std::vector<std::string> column_names;
    std::vector<Series> series;
    nlohmann::json config_echo;

    bool same_data(const Dataset& other) const {
        return master_seed == other.master_seed && column_names == other.column_names &&
               series == other.series;
    }
};

/// Pure function of the config: same config (including master_seed) yields a
/// bit-identical dataset. Series are generated in parallel, each from its own
/// seed_for(master_seed, index) stream.
Dataset generate(const GenerationConfig& config);

nlohmann::json to_json(const GenerationConfig& config);
GenerationConfig generation_config_from_json(const nlohmann::json& j);

nlohmann::json to_json(const DistributionSpec& d);
DistributionSpec distribution_from_json(const nlohmann::json& j, const std::string& context);

nlohmann::json to_json(const models::DerivedObservable& o);
models::DerivedObservable observable_from_json(const nlohmann::json& j);

}  // namespace simgen::datagen
