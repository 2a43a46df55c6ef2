#include "simgen/ode/system.hpp"

#include "simgen/models/sir.hpp"

namespace simgen::ode {

std::vector<double> resolve_params(const OdeSystem& system,
                                   const std::map<std::string, double>& by_name) {
    auto names = system.param_names();
    std::vector<double> out;
    out.reserve(names.size());
    for (const auto& name : names) {
        auto it = by_name.find(name);
        if (it == by_name.end())
            throw std::invalid_argument("missing parameter '" + name + "' for system '" +
                                        system.id() + "'");
        out.push_back(it->second);
    }
    if (by_name.size() != names.size()) {
        for (const auto& [k, v] : by_name)
            if (std::find(names.begin(), names.end(), k) == names.end())
                throw std::invalid_argument("unknown parameter '" + k + "' for system '" +
                                            system.id() + "'");
    }
    return out;
}

void ModelRegistry::add(std::shared_ptr<const OdeSystem> system) {
    systems_[system->id()] = std::move(system);
}

bool ModelRegistry::has(const std::string& id) const { return systems_.count(id) > 0; }

const OdeSystem& ModelRegistry::get(const std::string& id) const {
    auto it = systems_.find(id);
    if (it == systems_.end())
        throw std::invalid_argument("no registered ODE system with id '" + id + "'");
    return *it->second;
}

std::vector<std::string> ModelRegistry::ids() const {
    std::vector<std::string> out;
    out.reserve(systems_.size());
    for (const auto& [k, v] : systems_) out.push_back(k);
    return out;
}

const ModelRegistry& builtin_registry() {
    static const ModelRegistry registry = [] {
        ModelRegistry r;
        r.add(std::make_shared<models::SirSystem>());
        r.add(std::make_shared<models::SirCumulativeSystem>());
        return r;
    }();
    return registry;
}

}  // namespace simgen::ode
