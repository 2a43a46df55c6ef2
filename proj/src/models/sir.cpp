#include "simgen/models/sir.hpp"

namespace simgen::models {

std::array<double, 3> sir_rhs(double /*t*/, const SirState& s, const SirParams& p) {
    double infection = p.beta * s.S * s.I / p.N;
    double recovery = p.gamma * s.I;
    return {-infection, infection - recovery, recovery};
}

std::array<double, 4> sir_cumulative_rhs(double t, const SirCumulativeState& s,
                                         const SirParams& p) {
    auto d = sir_rhs(t, {s.S, s.I, s.R}, p);
    double infection = p.beta * s.S * s.I / p.N;
    return {d[0], d[1], d[2], infection};
}

void SirSystem::rhs(double t, std::span<const double> y, std::span<const double> p,
                    std::span<double> dydt) const {
    auto d = sir_rhs(t, {y[0], y[1], y[2]}, {p[0], p[1], p[2]});
    dydt[0] = d[0];
    dydt[1] = d[1];
    dydt[2] = d[2];
}

void SirSystem::jacobian(double /*t*/, std::span<const double> y, std::span<const double> p,
                         std::span<double> jac) const {
    double beta = p[0], gamma = p[1], N = p[2];
    double S = y[0], I = y[1];
    // rows: dS, dI, dR; cols: S, I, R
    jac[0] = -beta * I / N;
    jac[1] = -beta * S / N;
    jac[2] = 0.0;
    jac[3] = beta * I / N;
    jac[4] = beta * S / N - gamma;
    jac[5] = 0.0;
    jac[6] = 0.0;
    jac[7] = gamma;
    jac[8] = 0.0;
}

void SirCumulativeSystem::rhs(double t, std::span<const double> y, std::span<const double> p,
                              std::span<double> dydt) const {
    auto d = sir_cumulative_rhs(t, {y[0], y[1], y[2], y[3]}, {p[0], p[1], p[2]});
    for (std::size_t i = 0; i < 4; ++i) dydt[i] = d[i];
}

}  // namespace simgen::models
