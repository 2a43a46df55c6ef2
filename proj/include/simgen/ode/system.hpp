#pragma once

#include <map>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace simgen::ode {

/// Interface for a registered ODE system dy/dt = f(t, y, p).
/// Parameters are passed as a flat span in the order given by param_names().
class OdeSystem {
public:
    virtual ~OdeSystem() = default;

    virtual std::string id() const = 0;
    virtual std::size_t dimension() const = 0;
    virtual std::vector<std::string> state_names() const = 0;
    virtual std::vector<std::string> param_names() const = 0;

    virtual void rhs(double t, std::span<const double> y, std::span<const double> p,
                     std::span<double> dydt) const = 0;

    virtual bool has_jacobian() const { return false; }

    /// Row-major d x d Jacobian df/dy. Only called when has_jacobian() is true.
    virtual void jacobian(double /*t*/, std::span<const double> /*y*/,
                          std::span<const double> /*p*/, std::span<double> /*jac*/) const {
        throw std::logic_error("OdeSystem: analytic Jacobian not provided");
    }
};

/// Resolve a name->value map into the flat parameter order a system expects.
std::vector<double> resolve_params(const OdeSystem& system,
                                   const std::map<std::string, double>& by_name);

class ModelRegistry {
public:
    void add(std::shared_ptr<const OdeSystem> system);
    bool has(const std::string& id) const;
    const OdeSystem& get(const std::string& id) const;
    std::vector<std::string> ids() const;

private:
    std::map<std::string, std::shared_ptr<const OdeSystem>> systems_;
};

/// Registry preloaded with the built-in systems ("sir", "sir_cumulative").
const ModelRegistry& builtin_registry();

}  // namespace simgen::ode
