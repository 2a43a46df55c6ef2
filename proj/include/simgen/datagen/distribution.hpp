#pragma once

#include <stdexcept>
#include <string>

#include "simgen/datagen/rng.hpp"

namespace simgen::datagen {

struct InvalidSpec : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DistributionSpec {
    enum class Kind { Constant, Uniform, Normal, Lognormal };

    Kind kind = Kind::Constant;
    double a = 0.0;  // constant value / uniform lower / mu / mu_log
    double b = 0.0;  // uniform upper / sigma / sigma_log

    static DistributionSpec constant(double value) { return {Kind::Constant, value, 0.0}; }
    static DistributionSpec uniform(double lo, double hi) { return {Kind::Uniform, lo, hi}; }
    static DistributionSpec normal(double mu, double sigma) { return {Kind::Normal, mu, sigma}; }
    static DistributionSpec lognormal(double mu_log, double sigma_log) {
        return {Kind::Lognormal, mu_log, sigma_log};
    }

    void validate() const {
        switch (kind) {
            case Kind::Constant:
                return;
            case Kind::Uniform:
                if (!(a < b)) throw InvalidSpec("uniform distribution requires a < b");
                return;
            case Kind::Normal:
            case Kind::Lognormal:
                if (!(b > 0.0)) throw InvalidSpec("distribution requires sigma > 0");
                return;
        }
        throw InvalidSpec("unknown distribution kind");
    }
};

double sample(const DistributionSpec& dist, Rng& rng);

}  // namespace simgen::datagen
