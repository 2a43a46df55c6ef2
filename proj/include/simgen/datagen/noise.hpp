#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "simgen/datagen/rng.hpp"

namespace simgen::datagen {

struct NegativeInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NoiseSpec {
    enum class Kind { None, AdditiveGaussian, MultiplicativeLognormal };

    Kind kind = Kind::None;
    double sigma = 0.0;                 // additive case
    double sigma_log = 0.0;             // multiplicative case
    bool sigma_relative_to_max = false; // additive sigma as fraction of series max
    std::vector<std::string> targets;   // column names; empty = all columns

    void validate() const;
    bool applies_to(const std::string& column) const;
};

/// out[k] = in[k] + N(0, sigma^2)
std::vector<double> add_additive_gaussian(const std::vector<double>& series, double sigma,
                                          Rng& rng);

/// out[k] = in[k] * exp(N(0, sigma_log^2)); median-preserving, requires
/// nonnegative input.
std::vector<double> add_lognormal(const std::vector<double>& series, double sigma_log, Rng& rng);

/// Apply the spec to one column in place (no-op when the spec does not
/// target it).
void apply_noise(const NoiseSpec& spec, const std::string& column, std::vector<double>& values,
                 Rng& rng);

}  // namespace simgen::datagen
