#pragma once

#include "simgen/ml/metrics.hpp"
#include "simgen/ml/student_t.hpp"
#include "simgen/pipelines/config.hpp"

namespace simgen::pipelines {

struct CutoffTooEarly : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ReportRow {
    std::string experiment;
    std::string model;
    std::size_t size = 0;
    std::uint64_t seed = 0;
    ml::Metrics metrics;
    double seconds = 0.0;
};

/// Dataset-size benchmark: trains every model spec at every dataset size on
/// nested seeded subsets and scores NRMSE on a shared held-out series set.
/// Writes report.csv, timings.csv and manifest.json into config.output_dir.
std::vector<ReportRow> run_data_needs(const ExperimentConfig& config);

struct VariantForecast {
    std::string variant;  // "real_only" or "augmented"
    ml::ForecastDistribution dist;
    std::vector<std::pair<double, double>> interval50, interval85;
};

struct AugmentationResult {
    std::vector<VariantForecast> forecasts;
    std::vector<double> actuals;  // realized values after the cutoff, possibly fewer than w_out
    std::vector<ReportRow> report;
};

/// Paired real-only vs synthetic-augmented probabilistic forecast. Writes
/// forecasts.csv, report.csv, timings.csv and manifest.json.
AugmentationResult run_augmentation(const ExperimentConfig& config);

}  // namespace simgen::pipelines
