#include <algorithm>
#include <cmath>

#include "simgen/datagen/distribution.hpp"
#include "simgen/datagen/noise.hpp"
#include "simgen/datagen/sparsify.hpp"

namespace simgen::datagen {

double sample(const DistributionSpec& dist, Rng& rng) {
    dist.validate();
    switch (dist.kind) {
        case DistributionSpec::Kind::Constant:
            return dist.a;
        case DistributionSpec::Kind::Uniform:
            return rng.uniform(dist.a, dist.b);
        case DistributionSpec::Kind::Normal:
            return rng.normal(dist.a, dist.b);
        case DistributionSpec::Kind::Lognormal:
            return std::exp(rng.normal(dist.a, dist.b));
    }
    throw InvalidSpec("unknown distribution kind");
}

void NoiseSpec::validate() const {
    if (kind == Kind::AdditiveGaussian && !(sigma > 0.0))
        throw std::invalid_argument("NoiseSpec: additive_gaussian requires sigma > 0");
    if (kind == Kind::MultiplicativeLognormal && !(sigma_log > 0.0))
        throw std::invalid_argument("NoiseSpec: multiplicative_lognormal requires sigma_log > 0");
}

bool NoiseSpec::applies_to(const std::string& column) const {
    if (kind == Kind::None) return false;
    if (targets.empty()) return true;
    return std::find(targets.begin(), targets.end(), column) != targets.end();
}

std::vector<double> add_additive_gaussian(const std::vector<double>& series, double sigma,
                                          Rng& rng) {
    std::vector<double> out(series.size());
    for (std::size_t k = 0; k < series.size(); ++k) out[k] = series[k] + rng.normal(0.0, sigma);
    return out;
}

std::vector<double> add_lognormal(const std::vector<double>& series, double sigma_log, Rng& rng) {
    for (double v : series)
        if (v < 0.0)
            throw NegativeInput("add_lognormal: input values must be nonnegative");
    std::vector<double> out(series.size());
    for (std::size_t k = 0; k < series.size(); ++k)
        out[k] = series[k] * std::exp(rng.normal(0.0, sigma_log));
    return out;
}

void apply_noise(const NoiseSpec& spec, const std::string& column, std::vector<double>& values,
                 Rng& rng) {
    if (!spec.applies_to(column)) return;
    switch (spec.kind) {
        case NoiseSpec::Kind::None:
            return;
        case NoiseSpec::Kind::AdditiveGaussian: {
            double sigma = spec.sigma;
            if (spec.sigma_relative_to_max) {
                double mx = 0.0;
                for (double v : values) mx = std::max(mx, std::abs(v));
                sigma = mx > 0.0 ? spec.sigma * mx : spec.sigma;
            }
            values = add_additive_gaussian(values, sigma, rng);
            return;
        }
        case NoiseSpec::Kind::MultiplicativeLognormal:
            values = add_lognormal(values, spec.sigma_log, rng);
            return;
    }
}

std::vector<std::size_t> sparsify_indices(std::size_t m, double keep_fraction, Rng& rng) {
    if (m < 2) throw TooSparse("sparsify: series must have at least 2 points");
    if (!(keep_fraction > 0.0 && keep_fraction <= 1.0))
        throw std::invalid_argument("sparsify: keep_fraction must be in (0, 1]");
    std::size_t k = std::max<std::size_t>(
        2, static_cast<std::size_t>(std::llround(keep_fraction * static_cast<double>(m))));
    if (k > m) k = m;
    std::vector<std::size_t> keep;
    keep.reserve(k);
    keep.push_back(0);
    if (k > 2) {
        // partial Fisher-Yates over the interior indices 1..m-2
        std::vector<std::size_t> interior(m - 2);
        for (std::size_t i = 0; i < interior.size(); ++i) interior[i] = i + 1;
        for (std::size_t i = 0; i < k - 2; ++i) {
            std::size_t j = i + static_cast<std::size_t>(rng.below(interior.size() - i));
            std::swap(interior[i], interior[j]);
            keep.push_back(interior[i]);
        }
    }
    keep.push_back(m - 1);
    std::sort(keep.begin(), keep.end());
    return keep;
}

}  // namespace simgen::datagen
