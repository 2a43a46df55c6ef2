#pragma once

#include <cmath>
#include <cstdint>

namespace simgen::datagen {

/// SplitMix64 step; also used as the child-seed hash.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Child seed for series `index` under `master_seed`. Depends only on the
/// pair, so growing a dataset leaves earlier series untouched.
inline std::uint64_t seed_for(std::uint64_t master_seed, std::uint64_t index) {
    std::uint64_t s = master_seed ^ (0x9e3779b97f4a7c15ULL * (index + 1));
    return splitmix64(s);
}

/// Deterministic, self-contained PRNG stream (SplitMix64 core with polar
/// Gaussian sampling). Identical output on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() { return splitmix64(state_); }

    /// Uniform in [0, 1).
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    /// Integer in [0, n).
    std::uint64_t below(std::uint64_t n) {
        // rejection sampling to avoid modulo bias
        std::uint64_t threshold = (0ULL - n) % n;
        for (;;) {
            std::uint64_t r = next_u64();
            if (r >= threshold) return r % n;
        }
    }

    double normal(double mu = 0.0, double sigma = 1.0) {
        if (has_spare_) {
            has_spare_ = false;
            return mu + sigma * spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform() - 1.0;
            v = 2.0 * uniform() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        double factor = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * factor;
        has_spare_ = true;
        return mu + sigma * u * factor;
    }

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace simgen::datagen
