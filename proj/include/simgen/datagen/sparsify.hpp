#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "simgen/datagen/rng.hpp"

namespace simgen::datagen {

struct TooSparse : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct SparsifierSpec {
    double keep_fraction = 1.0;

    void validate() const {
        if (!(keep_fraction > 0.0 && keep_fraction <= 1.0))
            throw std::invalid_argument("SparsifierSpec: keep_fraction must be in (0, 1]");
    }
};

/// Indices to keep when sparsifying a length-m series: exactly
/// max(2, round(keep_fraction * m)) of them, uniformly chosen, always
/// including 0 and m-1, strictly increasing.
std::vector<std::size_t> sparsify_indices(std::size_t m, double keep_fraction, Rng& rng);

}  // namespace simgen::datagen
