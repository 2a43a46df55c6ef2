#pragma once

#include <array>

#include "simgen/ode/system.hpp"

namespace simgen::models {

struct SirParams {
    double beta;   // transmission rate, 1/day
    double gamma;  // recovery rate, 1/day
    double N;      // total population

    void validate() const {
        if (beta <= 0.0 || gamma <= 0.0 || N <= 0.0)
            throw std::invalid_argument("SirParams: beta, gamma, N must be positive");
    }
};

struct SirState {
    double S, I, R;
};

/// dS = -beta*S*I/N, dI = beta*S*I/N - gamma*I, dR = gamma*I
std::array<double, 3> sir_rhs(double t, const SirState& state, const SirParams& params);

struct SirCumulativeState {
    double S, I, R;
    double C_sigma;  // cumulative new cases
};

/// As sir_rhs, plus dC_sigma = beta*S*I/N.
std::array<double, 4> sir_cumulative_rhs(double t, const SirCumulativeState& state,
                                         const SirParams& params);

class SirSystem final : public ode::OdeSystem {
public:
    std::string id() const override { return "sir"; }
    std::size_t dimension() const override { return 3; }
    std::vector<std::string> state_names() const override { return {"S", "I", "R"}; }
    std::vector<std::string> param_names() const override { return {"beta", "gamma", "N"}; }
    void rhs(double t, std::span<const double> y, std::span<const double> p,
             std::span<double> dydt) const override;
    bool has_jacobian() const override { return true; }
    void jacobian(double t, std::span<const double> y, std::span<const double> p,
                  std::span<double> jac) const override;
};

class SirCumulativeSystem final : public ode::OdeSystem {
public:
    std::string id() const override { return "sir_cumulative"; }
    std::size_t dimension() const override { return 4; }
    std::vector<std::string> state_names() const override { return {"S", "I", "R", "C_sigma"}; }
    std::vector<std::string> param_names() const override { return {"beta", "gamma", "N"}; }
    void rhs(double t, std::span<const double> y, std::span<const double> p,
             std::span<double> dydt) const override;
};

}  // namespace simgen::models
