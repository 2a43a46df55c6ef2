#include "simgen/pipelines/experiments.hpp"

#include <chrono>
#include <fstream>

#include "simgen/datagen/rng.hpp"
#include "simgen/ml/nn.hpp"
#include "simgen/ml/windows.hpp"
#include "simgen/models/preprocess.hpp"
#include "simgen/pipelines/ingest.hpp"
#include "simgen/util/format.hpp"
#include "simgen/util/json_util.hpp"

namespace simgen::pipelines {

namespace fs = std::filesystem;
using util::ConfigError;

namespace {

std::size_t target_column_index(const datagen::Dataset& ds, const std::string& name) {
    if (name.empty()) return 0;
    for (std::size_t i = 0; i < ds.column_names.size(); ++i)
        if (ds.column_names[i] == name) return i;
    throw ConfigError("target_column \"" + name + "\" not found in dataset columns");
}

double elapsed_seconds(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// report.csv carries only run-independent fields so identical configs give
// byte-identical files; measured wall-clock goes to timings.csv instead.
void write_report(const std::vector<ReportRow>& rows, const fs::path& dir) {
    std::ofstream report(dir / "report.csv");
    std::ofstream timings(dir / "timings.csv");
    if (!report || !timings) throw FileError("cannot write reports into " + dir.string());
    report << "experiment,model,size,seed,rmse,nrmse,nll,seconds\n";
    timings << "experiment,model,size,seconds\n";
    for (const auto& r : rows) {
        report << r.experiment << ',' << r.model << ',' << r.size << ',' << r.seed << ','
               << util::format_double(r.metrics.rmse) << ','
               << util::format_double(r.metrics.nrmse) << ',';
        if (r.metrics.mean_nll) report << util::format_double(*r.metrics.mean_nll);
        report << ",\n";
        timings << r.experiment << ',' << r.model << ',' << r.size << ','
                << util::format_double(r.seconds) << '\n';
    }
}

void write_manifest(const ExperimentConfig& config, const fs::path& dir) {
    std::ofstream out(dir / "manifest.json");
    if (!out) throw FileError("cannot write manifest into " + dir.string());
    out << to_json(config).dump(2) << '\n';
}

}  // namespace

std::vector<ReportRow> run_data_needs(const ExperimentConfig& config) {
    config.validate();
    if (config.kind != ExperimentConfig::Kind::DataNeeds)
        throw ConfigError("run_data_needs: config kind is not data_needs");

    std::size_t max_size = config.dataset_sizes.back();
    auto n_test = static_cast<std::size_t>(
        std::max<long long>(1, std::llround(config.test_fraction * double(max_size))));

    // One seeded pool: train subsets are nested prefixes, the test block
    // sits beyond the largest size so no series crosses the split.
    datagen::GenerationConfig gen = config.generation;
    gen.master_seed = config.master_seed;
    gen.n_series = max_size + n_test;
    auto dataset = datagen::generate(gen);
    std::size_t col = target_column_index(dataset, config.target_column);

    std::vector<std::vector<double>> all_series(dataset.series.size());
    for (std::size_t i = 0; i < dataset.series.size(); ++i)
        all_series[i] = dataset.series[i].columns[col];

    std::vector<std::vector<double>> test_series(all_series.begin() + long(max_size),
                                                 all_series.end());
    auto test = ml::make_windows(test_series, config.w_in, config.w_out);

    std::vector<ReportRow> rows;
    for (std::size_t si = 0; si < config.dataset_sizes.size(); ++si) {
        std::size_t size = config.dataset_sizes[si];
        std::vector<std::vector<double>> train_series(all_series.begin(),
                                                      all_series.begin() + long(size));
        auto train = ml::make_windows(train_series, config.w_in, config.w_out);

        for (std::size_t mi = 0; mi < config.models.size(); ++mi) {
            ml::ModelSpec spec = config.models[mi];
            spec.seed = datagen::seed_for(config.master_seed ^ 0xce11,
                                          mi * config.dataset_sizes.size() + si);
            auto start = std::chrono::steady_clock::now();
            auto model = ml::fit_model(train, spec);

            std::vector<std::vector<double>> preds;
            preds.reserve(test.size());
            for (const auto& x : test.X) preds.push_back(model->predict(x));
            ReportRow row;
            row.experiment = "data_needs";
            row.model = spec.family_name();
            row.size = size;
            row.seed = spec.seed;
            row.metrics = ml::metric_nrmse(test.Y, preds);
            if (model->probabilistic()) {
                double nll = 0.0;
                for (std::size_t i = 0; i < test.size(); ++i)
                    nll += ml::student_t_nll(model->predict_distribution(test.X[i]), test.Y[i]);
                row.metrics.mean_nll = nll / double(test.size());
            }
            row.seconds = elapsed_seconds(start);
            rows.push_back(std::move(row));
        }
    }

    std::sort(rows.begin(), rows.end(), [](const ReportRow& a, const ReportRow& b) {
        return std::tie(a.model, a.size) < std::tie(b.model, b.size);
    });
    fs::create_directories(config.output_dir);
    write_report(rows, config.output_dir);
    write_manifest(config, config.output_dir);
    return rows;
}

AugmentationResult run_augmentation(const ExperimentConfig& config) {
    config.validate();
    if (config.kind != ExperimentConfig::Kind::Augmentation)
        throw ConfigError("run_augmentation: config kind is not augmentation");
    const auto& spec0 = config.models.front();
    if (spec0.family != ml::ModelSpec::Family::Nn || spec0.head != ml::ModelSpec::Head::StudentT)
        throw ConfigError("run_augmentation: first model must be an nn with the student_t head");

    auto real = ingest_real_csv(config.real_data_path);
    auto smoothed = models::moving_average(real.values, config.smoothing_window);
    if (config.train_cutoff_index > smoothed.size())
        throw CutoffTooEarly("cutoff index " + std::to_string(config.train_cutoff_index) +
                             " exceeds smoothed series length " +
                             std::to_string(smoothed.size()));
    if (config.train_cutoff_index < config.w_in + config.w_out)
        throw CutoffTooEarly("cutoff leaves fewer than w_in + w_out observed points");
    std::vector<double> train_series(smoothed.begin(),
                                     smoothed.begin() + long(config.train_cutoff_index));

    AugmentationResult result;
    for (std::size_t h = 0;
         h < config.w_out && config.train_cutoff_index + h < smoothed.size(); ++h)
        result.actuals.push_back(smoothed[config.train_cutoff_index + h]);

    datagen::GenerationConfig gen = config.generation;
    gen.master_seed = config.master_seed;
    auto synthetic = datagen::generate(gen);
    std::size_t col = target_column_index(synthetic, config.target_column);

    auto real_windows = ml::make_windows({train_series}, config.w_in, config.w_out);
    std::vector<std::vector<double>> synth_series(synthetic.series.size());
    for (std::size_t i = 0; i < synthetic.series.size(); ++i)
        synth_series[i] = synthetic.series[i].columns[col];
    auto augmented_windows = ml::make_windows(synth_series, config.w_in, config.w_out);
    augmented_windows.append(real_windows);

    std::vector<double> query(train_series.end() - long(config.w_in), train_series.end());

    ml::ModelSpec nn_spec = spec0;
    nn_spec.seed = datagen::seed_for(config.master_seed, 0x417);  // identical for both variants

    auto run_variant = [&](const std::string& name, const ml::WindowedDataset& train,
                           std::vector<ReportRow>& report) {
        auto start = std::chrono::steady_clock::now();
        auto model = ml::fit_model(train, nn_spec);
        VariantForecast vf;
        vf.variant = name;
        vf.dist = model->predict_distribution(query);
        vf.interval50 = ml::interval(vf.dist, 0.50);
        vf.interval85 = ml::interval(vf.dist, 0.85);

        ReportRow row;
        row.experiment = "augmentation";
        row.model = nn_spec.family_name() + ":" + name;
        row.size = train.size();
        row.seed = nn_spec.seed;
        if (!result.actuals.empty()) {
            std::vector<std::vector<double>> yt{result.actuals}, yp;
            yp.push_back(std::vector<double>());
            double nll = 0.0;
            for (std::size_t h = 0; h < result.actuals.size(); ++h) {
                yp[0].push_back(vf.dist.steps[h].mu);
                nll += ml::student_t_nll(vf.dist.steps[h].mu, vf.dist.steps[h].sigma,
                                         vf.dist.steps[h].nu, result.actuals[h]);
            }
            row.metrics = ml::metric_nrmse(yt, yp);
            row.metrics.mean_nll = nll / double(result.actuals.size());
        }
        row.seconds = elapsed_seconds(start);
        report.push_back(std::move(row));
        result.forecasts.push_back(std::move(vf));
    };

    run_variant("real_only", real_windows, result.report);
    run_variant("augmented", augmented_windows, result.report);

    fs::create_directories(config.output_dir);
    std::ofstream fc(config.output_dir / "forecasts.csv");
    if (!fc) throw FileError("cannot write forecasts.csv");
    fc << "variant,h,mu,lo50,hi50,lo85,hi85,actual\n";
    for (const auto& vf : result.forecasts) {
        for (std::size_t h = 0; h < vf.dist.steps.size(); ++h) {
            fc << vf.variant << ',' << (h + 1) << ','
               << util::format_double(vf.dist.steps[h].mu) << ','
               << util::format_double(vf.interval50[h].first) << ','
               << util::format_double(vf.interval50[h].second) << ','
               << util::format_double(vf.interval85[h].first) << ','
               << util::format_double(vf.interval85[h].second) << ',';
            if (h < result.actuals.size()) fc << util::format_double(result.actuals[h]);
            fc << '\n';
        }
    }
    fc.close();
    write_report(result.report, config.output_dir);
    write_manifest(config, config.output_dir);
    return result;
}

}  // namespace simgen::pipelines
