#include "simgen/datagen/generate.hpp"

#include <algorithm>

#include "simgen/ode/solver.hpp"
#include "simgen/ode/system.hpp"
#include "simgen/util/json_util.hpp"
#include "simgen/util/parallel.hpp"

namespace simgen::datagen {

using nlohmann::json;
using util::check_keys;
using util::ConfigError;
using util::require;

void GenerationConfig::validate() const {
    const auto& registry = ode::builtin_registry();
    if (!registry.has(system_id))
        throw ConfigError("generation config: unknown system id \"" + system_id + "\"");
    const auto& system = registry.get(system_id);
    auto pnames = system.param_names();
    auto snames = system.state_names();
    for (const auto& [name, dist] : params) {
        if (std::find(pnames.begin(), pnames.end(), name) == pnames.end())
            throw ConfigError("generation config: system \"" + system_id +
                              "\" has no parameter \"" + name + "\"");
        dist.validate();
    }
    for (const auto& name : pnames)
        if (!params.count(name))
            throw ConfigError("generation config: no distribution for parameter \"" + name + "\"");
    for (const auto& [name, dist] : initial_conditions) {
        if (std::find(snames.begin(), snames.end(), name) == snames.end())
            throw ConfigError("generation config: system \"" + system_id +
                              "\" has no state \"" + name + "\"");
        dist.validate();
    }
    for (const auto& name : snames)
        if (!initial_conditions.count(name))
            throw ConfigError("generation config: no distribution for initial condition \"" +
                              name + "\"");
    grid.validate();
    solver.validate();
    noise.validate();
    if (sparsifier) sparsifier->validate();
    if (n_series < 1) throw ConfigError("generation config: n_series must be >= 1");
    for (const auto& obs : observables)
        for (std::size_t idx : obs.indices)
            if (idx >= system.dimension())
                throw ConfigError("generation config: observable \"" + obs.name +
                                  "\" references state index out of range");
}

namespace {

std::vector<models::DerivedObservable> effective_observables(const GenerationConfig& cfg,
                                                             const ode::OdeSystem& system) {
    if (!cfg.observables.empty()) return cfg.observables;
    std::vector<models::DerivedObservable> obs;
    auto names = system.state_names();
    for (std::size_t i = 0; i < names.size(); ++i)
        obs.push_back(models::DerivedObservable::column(names[i], i));
    return obs;
}

Series generate_one(const GenerationConfig& cfg, const ode::OdeSystem& system,
                    const std::vector<models::DerivedObservable>& observables,
                    std::uint64_t index) {
    Series s;
    s.index = index;
    s.seed = seed_for(cfg.master_seed, index);
    Rng rng(s.seed);

    std::vector<double> flat_params;
    for (const auto& name : system.param_names()) {
        double v = sample(cfg.params.at(name), rng);
        s.sampled_params[name] = v;
        flat_params.push_back(v);
    }
    ode::StateVector y0;
    for (const auto& name : system.state_names()) {
        double v = sample(cfg.initial_conditions.at(name), rng);
        s.sampled_initial[name] = v;
        y0.push_back(v);
    }

    auto traj = ode::integrate(system, flat_params, y0, cfg.grid, cfg.solver);

    std::size_t min_len = traj.size();
    for (const auto& obs : observables) {
        s.columns.push_back(obs.evaluate(traj));
        min_len = std::min(min_len, s.columns.back().size());
    }
    // align columns that drop leading points (differencing) by trimming all
    // columns to the common tail
    for (auto& col : s.columns)
        if (col.size() > min_len) col.erase(col.begin(), col.begin() + (col.size() - min_len));
    std::vector<double> grid_times;
    grid_times.reserve(cfg.grid.points.size());
    for (double t : cfg.grid.points) grid_times.push_back(t);
    s.times.assign(grid_times.end() - static_cast<std::ptrdiff_t>(min_len), grid_times.end());

    for (std::size_t c = 0; c < s.columns.size(); ++c)
        apply_noise(cfg.noise, observables[c].name, s.columns[c], rng);

    if (cfg.sparsifier) {
        auto keep = sparsify_indices(s.times.size(), cfg.sparsifier->keep_fraction, rng);
        auto pick = [&](const std::vector<double>& v) {
            std::vector<double> out;
            out.reserve(keep.size());
            for (std::size_t idx : keep) out.push_back(v[idx]);
            return out;
        };
        s.times = pick(s.times);
        for (auto& col : s.columns) col = pick(col);
    }
    return s;
}

}  // namespace

Dataset generate(const GenerationConfig& cfg) {
    cfg.validate();
    const auto& system = ode::builtin_registry().get(cfg.system_id);
    auto observables = effective_observables(cfg, system);

    Dataset ds;
    ds.master_seed = cfg.master_seed;
    for (const auto& obs : observables) ds.column_names.push_back(obs.name);
    ds.config_echo = to_json(cfg);
    ds.series.resize(cfg.n_series);

    util::parallel_for(cfg.n_series, [&](std::size_t i) {
        try {
            ds.series[i] = generate_one(cfg, system, observables, i);
        } catch (const ode::SolverError& e) {
            Rng probe(seed_for(cfg.master_seed, i));
            std::string detail = "series " + std::to_string(i) + ": " + e.what() + " (params:";
            for (const auto& name : system.param_names())
                detail += " " + name + "=" + std::to_string(sample(cfg.params.at(name), probe));
            detail += ")";
            throw ode::SolverError(detail);
        }
    });
    return ds;
}

// ---------------------------------------------------------------------------
// JSON

json to_json(const DistributionSpec& d) {
    switch (d.kind) {
        case DistributionSpec::Kind::Constant:
            return {{"kind", "constant"}, {"value", d.a}};
        case DistributionSpec::Kind::Uniform:
            return {{"kind", "uniform"}, {"low", d.a}, {"high", d.b}};
        case DistributionSpec::Kind::Normal:
            return {{"kind", "normal"}, {"mu", d.a}, {"sigma", d.b}};
        case DistributionSpec::Kind::Lognormal:
            return {{"kind", "lognormal"}, {"mu_log", d.a}, {"sigma_log", d.b}};
    }
    throw std::logic_error("unreachable distribution kind");
}

DistributionSpec distribution_from_json(const json& j, const std::string& context) {
    if (j.is_number()) return DistributionSpec::constant(j.get<double>());
    std::string kind = require(j, "kind", context).get<std::string>();
    DistributionSpec d;
    if (kind == "constant") {
        check_keys(j, {"kind", "value"}, context);
        d = DistributionSpec::constant(require(j, "value", context).get<double>());
    } else if (kind == "uniform") {
        check_keys(j, {"kind", "low", "high"}, context);
        d = DistributionSpec::uniform(require(j, "low", context).get<double>(),
                                      require(j, "high", context).get<double>());
    } else if (kind == "normal") {
        check_keys(j, {"kind", "mu", "sigma"}, context);
        d = DistributionSpec::normal(require(j, "mu", context).get<double>(),
                                     require(j, "sigma", context).get<double>());
    } else if (kind == "lognormal") {
        check_keys(j, {"kind", "mu_log", "sigma_log"}, context);
        d = DistributionSpec::lognormal(require(j, "mu_log", context).get<double>(),
                                        require(j, "sigma_log", context).get<double>());
    } else {
        throw ConfigError(context + ": unknown distribution kind \"" + kind + "\"");
    }
    d.validate();
    return d;
}

json to_json(const models::DerivedObservable& o) {
    json j{{"name", o.name}};
    switch (o.kind) {
        case models::DerivedObservable::Kind::Column:
            j["kind"] = "column";
            j["index"] = o.indices.at(0);
            break;
        case models::DerivedObservable::Kind::RatioSum:
            j["kind"] = "ratio_sum";
            j["indices"] = o.indices;
            if (o.denominator_from_initial_total)
                j["denominator"] = "initial_total";
            else
                j["denominator"] = o.denominator;
            break;
        case models::DerivedObservable::Kind::Difference:
            j["kind"] = "difference";
            j["index"] = o.indices.at(0);
            break;
    }
    return j;
}

models::DerivedObservable observable_from_json(const json& j) {
    std::string ctx = "observable";
    std::string name = require(j, "name", ctx).get<std::string>();
    std::string kind = require(j, "kind", ctx).get<std::string>();
    ctx = "observable \"" + name + "\"";
    if (kind == "column") {
        check_keys(j, {"name", "kind", "index"}, ctx);
        return models::DerivedObservable::column(name, require(j, "index", ctx).get<std::size_t>());
    }
    if (kind == "difference") {
        check_keys(j, {"name", "kind", "index"}, ctx);
        return models::DerivedObservable::difference(name,
                                                     require(j, "index", ctx).get<std::size_t>());
    }
    if (kind == "ratio_sum") {
        check_keys(j, {"name", "kind", "indices", "denominator"}, ctx);
        auto idx = require(j, "indices", ctx).get<std::vector<std::size_t>>();
        if (idx.size() != 2) throw ConfigError(ctx + ": \"indices\" must have exactly 2 entries");
        const auto& denom = require(j, "denominator", ctx);
        if (denom.is_string()) {
            if (denom.get<std::string>() != "initial_total")
                throw ConfigError(ctx + ": denominator must be a number or \"initial_total\"");
            return models::DerivedObservable::ratio_sum_initial_total(name, idx[0], idx[1]);
        }
        return models::DerivedObservable::ratio_sum(name, idx[0], idx[1], denom.get<double>());
    }
    throw ConfigError(ctx + ": unknown observable kind \"" + kind + "\"");
}

namespace {

json to_json(const NoiseSpec& n) {
    switch (n.kind) {
        case NoiseSpec::Kind::None:
            return {{"kind", "none"}};
        case NoiseSpec::Kind::AdditiveGaussian: {
            json j{{"kind", "additive_gaussian"}, {"sigma", n.sigma}};
            if (n.sigma_relative_to_max) j["sigma_relative_to_max"] = true;
            if (!n.targets.empty()) j["targets"] = n.targets;
            return j;
        }
        case NoiseSpec::Kind::MultiplicativeLognormal: {
            json j{{"kind", "multiplicative_lognormal"}, {"sigma_log", n.sigma_log}};
            if (!n.targets.empty()) j["targets"] = n.targets;
            return j;
        }
    }
    throw std::logic_error("unreachable noise kind");
}

NoiseSpec noise_from_json(const json& j) {
    const std::string ctx = "noise";
    NoiseSpec n;
    std::string kind = require(j, "kind", ctx).get<std::string>();
    if (kind == "none") {
        check_keys(j, {"kind"}, ctx);
        n.kind = NoiseSpec::Kind::None;
    } else if (kind == "additive_gaussian") {
        check_keys(j, {"kind", "sigma", "sigma_relative_to_max", "targets"}, ctx);
        n.kind = NoiseSpec::Kind::AdditiveGaussian;
        n.sigma = require(j, "sigma", ctx).get<double>();
        n.sigma_relative_to_max = j.value("sigma_relative_to_max", false);
        n.targets = j.value("targets", std::vector<std::string>{});
    } else if (kind == "multiplicative_lognormal") {
        check_keys(j, {"kind", "sigma_log", "targets"}, ctx);
        n.kind = NoiseSpec::Kind::MultiplicativeLognormal;
        n.sigma_log = require(j, "sigma_log", ctx).get<double>();
        n.targets = j.value("targets", std::vector<std::string>{});
    } else {
        throw ConfigError(ctx + ": unknown noise kind \"" + kind + "\"");
    }
    n.validate();
    return n;
}

json to_json(const ode::TimeGrid& g) {
    return {{"t0", g.t0}, {"points", g.points}};
}

ode::TimeGrid grid_from_json(const json& j) {
    const std::string ctx = "grid";
    ode::TimeGrid g;
    if (j.contains("points")) {
        check_keys(j, {"t0", "points"}, ctx);
        g.t0 = j.value("t0", 0.0);
        g.points = require(j, "points", ctx).get<std::vector<double>>();
    } else {
        check_keys(j, {"t0", "t_end", "n"}, ctx);
        double t0 = j.value("t0", 0.0);
        g = ode::TimeGrid::linspace(t0, require(j, "t_end", ctx).get<double>(),
                                    require(j, "n", ctx).get<std::size_t>());
    }
    g.validate();
    return g;
}

json to_json(const ode::SolverConfig& s) {
    return {{"rtol", s.rtol},   {"atol", s.atol},           {"h_init", s.h_init},
            {"h_min", s.h_min}, {"h_max", s.h_max},         {"max_steps", s.max_steps}};
}

ode::SolverConfig solver_from_json(const json& j) {
    const std::string ctx = "solver";
    check_keys(j, {"rtol", "atol", "h_init", "h_min", "h_max", "max_steps"}, ctx);
    ode::SolverConfig s;
    s.rtol = j.value("rtol", s.rtol);
    s.atol = j.value("atol", s.atol);
    s.h_init = j.value("h_init", s.h_init);
    s.h_min = j.value("h_min", s.h_min);
    s.h_max = j.value("h_max", s.h_max);
    s.max_steps = j.value("max_steps", s.max_steps);
    s.validate();
    return s;
}

std::map<std::string, DistributionSpec> dist_map_from_json(const json& j,
                                                           const std::string& context) {
    if (!j.is_object()) throw ConfigError(context + ": expected an object of distributions");
    std::map<std::string, DistributionSpec> out;
    for (const auto& [key, value] : j.items())
        out.emplace(key, distribution_from_json(value, context + "." + key));
    return out;
}

}  // namespace

json to_json(const GenerationConfig& c) {
    json j;
    j["system"] = c.system_id;
    json params = json::object();
    for (const auto& [k, v] : c.params) params[k] = to_json(v);
    j["params"] = params;
    json initial = json::object();
    for (const auto& [k, v] : c.initial_conditions) initial[k] = to_json(v);
    j["initial_conditions"] = initial;
    j["grid"] = to_json(c.grid);
    j["solver"] = to_json(c.solver);
    j["noise"] = to_json(c.noise);
    if (c.sparsifier) j["sparsifier"] = {{"keep_fraction", c.sparsifier->keep_fraction}};
    j["n_series"] = c.n_series;
    j["master_seed"] = c.master_seed;
    if (!c.observables.empty()) {
        json obs = json::array();
        for (const auto& o : c.observables) obs.push_back(to_json(o));
        j["observables"] = obs;
    }
    return j;
}

GenerationConfig generation_config_from_json(const json& j) {
    const std::string ctx = "generation config";
    check_keys(j,
               {"system", "params", "initial_conditions", "grid", "solver", "noise", "sparsifier",
                "n_series", "master_seed", "observables"},
               ctx);
    GenerationConfig c;
    c.system_id = require(j, "system", ctx).get<std::string>();
    c.params = dist_map_from_json(require(j, "params", ctx), "params");
    c.initial_conditions =
        dist_map_from_json(require(j, "initial_conditions", ctx), "initial_conditions");
    c.grid = grid_from_json(require(j, "grid", ctx));
    if (j.contains("solver")) c.solver = solver_from_json(j.at("solver"));
    if (j.contains("noise")) c.noise = noise_from_json(j.at("noise"));
    if (j.contains("sparsifier")) {
        check_keys(j.at("sparsifier"), {"keep_fraction"}, "sparsifier");
        SparsifierSpec sp;
        sp.keep_fraction = require(j.at("sparsifier"), "keep_fraction", "sparsifier").get<double>();
        c.sparsifier = sp;
    }
    c.n_series = require(j, "n_series", ctx).get<std::size_t>();
    c.master_seed = require(j, "master_seed", ctx).get<std::uint64_t>();
    if (j.contains("observables"))
        for (const auto& o : j.at("observables")) c.observables.push_back(observable_from_json(o));
    c.validate();
    return c;
}

}  // namespace simgen::datagen
