#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "simgen/pipelines/cli.hpp"
#include "simgen/pipelines/experiments.hpp"
#include "simgen/pipelines/ingest.hpp"
#include "simgen/util/json_util.hpp"

using namespace simgen;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const std::string& tag) {
    auto dir = fs::temp_directory_path() / ("simgen_pipe_" + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream(path) << content;
}

std::string slurp(const fs::path& path) {
    std::ostringstream out;
    out << std::ifstream(path).rdbuf();
    return out.str();
}

datagen::GenerationConfig sir_gen(std::size_t n_series, std::uint64_t seed) {
    datagen::GenerationConfig gen;
    gen.system_id = "sir";
    gen.params["beta"] = datagen::DistributionSpec::uniform(0.32, 0.35);
    gen.params["gamma"] = datagen::DistributionSpec::uniform(0.123, 0.125);
    gen.params["N"] = datagen::DistributionSpec::constant(1000.0);
    gen.initial_conditions["S"] = datagen::DistributionSpec::constant(990.0);
    gen.initial_conditions["I"] = datagen::DistributionSpec::uniform(5.0, 15.0);
    gen.initial_conditions["R"] = datagen::DistributionSpec::constant(0.0);
    gen.grid = ode::TimeGrid::linspace(0.0, 30.0, 30);
    gen.n_series = n_series;
    gen.master_seed = seed;
    return gen;
}

int run_cli(std::vector<std::string> args) {
    std::vector<const char*> argv{"simgen"};
    for (const auto& a : args) argv.push_back(a.c_str());
    return pipelines::cli_main(int(argv.size()), argv.data());
}

}  // namespace

TEST_CASE("ingest_real_csv: parses dated daily counts") {
    auto dir = temp_dir("ingest");
    write_file(dir / "cases.csv", "date,cases\n2020-02-28,5\n2020-02-29,7.5\n2020-03-01,9\n");
    auto series = pipelines::ingest_real_csv(dir / "cases.csv");
    CHECK(series.first_date == "2020-02-28");
    CHECK(series.values == std::vector<double>{5.0, 7.5, 9.0});
    fs::remove_all(dir);
}

TEST_CASE("ingest_real_csv: works without a header row") {
    auto dir = temp_dir("ingest_nh");
    write_file(dir / "cases.csv", "2021-12-31,1\n2022-01-01,2\n");
    auto series = pipelines::ingest_real_csv(dir / "cases.csv");
    CHECK(series.values.size() == 2);
    CHECK(series.first_date == "2021-12-31");
    fs::remove_all(dir);
}

TEST_CASE("ingest_real_csv: rejects bad inputs") {
    auto dir = temp_dir("ingest_bad");
    write_file(dir / "gap.csv", "2020-01-01,1\n2020-01-03,2\n");
    CHECK_THROWS_AS(pipelines::ingest_real_csv(dir / "gap.csv"), pipelines::NonContiguousDates);

    write_file(dir / "dup.csv", "2020-01-01,1\n2020-01-01,2\n");
    CHECK_THROWS_AS(pipelines::ingest_real_csv(dir / "dup.csv"), pipelines::NonContiguousDates);

    write_file(dir / "neg.csv", "2020-01-01,1\n2020-01-02,-2\n");
    CHECK_THROWS_AS(pipelines::ingest_real_csv(dir / "neg.csv"), pipelines::NegativeCaseCount);

    write_file(dir / "junk.csv", "2020-01-01,1\nnot-a-date,2\n");
    CHECK_THROWS_AS(pipelines::ingest_real_csv(dir / "junk.csv"), pipelines::ParseError);

    CHECK_THROWS_AS(pipelines::ingest_real_csv(dir / "missing.csv"), pipelines::FileError);
    fs::remove_all(dir);
}

TEST_CASE("run_data_needs: one row per model and size, sorted and reproducible") {
    auto out1 = temp_dir("dn1");
    auto out2 = temp_dir("dn2");

    pipelines::ExperimentConfig cfg;
    cfg.kind = pipelines::ExperimentConfig::Kind::DataNeeds;
    cfg.generation = sir_gen(1, 0);
    cfg.target_column = "I";
    cfg.w_in = 5;
    cfg.w_out = 3;
    cfg.dataset_sizes = {2, 4};
    cfg.test_fraction = 0.5;
    cfg.master_seed = 4242;
    cfg.output_dir = out1;
    ml::ModelSpec linear;
    linear.family = ml::ModelSpec::Family::Linear;
    ml::ModelSpec knn;
    knn.family = ml::ModelSpec::Family::Knn;
    knn.k = 3;
    cfg.models = {linear, knn};

    auto rows = pipelines::run_data_needs(cfg);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].model == "knn");
    CHECK(rows[0].size == 2);
    CHECK(rows[1].model == "knn");
    CHECK(rows[1].size == 4);
    CHECK(rows[2].model == "linear");
    CHECK(rows[3].model == "linear");
    for (const auto& r : rows) {
        CHECK(r.experiment == "data_needs");
        CHECK(r.metrics.nrmse >= 0.0);
        CHECK_FALSE(r.metrics.mean_nll.has_value());
    }
    CHECK(fs::exists(out1 / "report.csv"));
    CHECK(fs::exists(out1 / "timings.csv"));
    CHECK(fs::exists(out1 / "manifest.json"));

    cfg.output_dir = out2;
    pipelines::run_data_needs(cfg);
    CHECK(slurp(out1 / "report.csv") == slurp(out2 / "report.csv"));

    fs::remove_all(out1);
    fs::remove_all(out2);
}

TEST_CASE("run_data_needs: linear model is near-exact on a noiseless exponential") {
    // with beta ~ 0 the infected compartment decays as I(t+1) = exp(-gamma) I(t),
    // which a one-lag linear model represents exactly
    auto out = temp_dir("dn_lin");
    pipelines::ExperimentConfig cfg;
    cfg.kind = pipelines::ExperimentConfig::Kind::DataNeeds;
    cfg.generation = sir_gen(1, 0);
    cfg.generation.params["beta"] = datagen::DistributionSpec::constant(1e-12);
    cfg.generation.params["gamma"] = datagen::DistributionSpec::constant(0.1);
    cfg.generation.initial_conditions["I"] = datagen::DistributionSpec::uniform(50.0, 100.0);
    cfg.generation.solver.rtol = 1e-10;
    cfg.generation.solver.atol = 1e-12;
    cfg.target_column = "I";
    cfg.w_in = 2;
    cfg.w_out = 1;
    cfg.dataset_sizes = {4};
    cfg.test_fraction = 0.5;
    cfg.master_seed = 99;
    cfg.output_dir = out;
    ml::ModelSpec linear;
    linear.family = ml::ModelSpec::Family::Linear;
    cfg.models = {linear};

    auto rows = pipelines::run_data_needs(cfg);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].metrics.nrmse < 1e-6);
    fs::remove_all(out);
}

TEST_CASE("run_augmentation: paired probabilistic forecasts with nested intervals") {
    auto dir = temp_dir("aug");

    // synthesize a plausible "real" incidence file from one clean SIR run
    auto real_data = datagen::generate(sir_gen(1, 7));
    const auto& curve = real_data.series[0].columns[1];  // infected column
    std::ostringstream csv;
    csv << "date,cases\n";
    for (std::size_t i = 0; i < curve.size(); ++i) {
        int day = 1 + int(i);
        csv << "2020-03-" << (day < 10 ? "0" : "") << day % 100;
        if (day > 31) throw std::logic_error("test series too long for a fixed month");
        csv << ',' << curve[i] << '\n';
    }
    write_file(dir / "real.csv", csv.str());

    pipelines::ExperimentConfig cfg;
    cfg.kind = pipelines::ExperimentConfig::Kind::Augmentation;
    cfg.generation = sir_gen(3, 11);
    cfg.target_column = "I";
    cfg.w_in = 5;
    cfg.w_out = 3;
    cfg.real_data_path = (dir / "real.csv").string();
    cfg.train_cutoff_index = 20;
    cfg.smoothing_window = 1;
    cfg.master_seed = 1234;
    cfg.output_dir = dir / "out";
    ml::ModelSpec nn;
    nn.family = ml::ModelSpec::Family::Nn;
    nn.head = ml::ModelSpec::Head::StudentT;
    nn.hidden = {8};
    nn.epochs = 30;
    nn.batch_size = 16;
    cfg.models = {nn};

    auto result = pipelines::run_augmentation(cfg);
    REQUIRE(result.forecasts.size() == 2);
    CHECK(result.forecasts[0].variant == "real_only");
    CHECK(result.forecasts[1].variant == "augmented");
    CHECK(result.actuals.size() == 3);

    for (const auto& vf : result.forecasts) {
        REQUIRE(vf.dist.steps.size() == 3);
        for (std::size_t h = 0; h < 3; ++h) {
            CHECK(vf.dist.steps[h].sigma > 0.0);
            CHECK(vf.dist.steps[h].nu > 2.0);
            CHECK(vf.interval85[h].first < vf.interval50[h].first);
            CHECK(vf.interval50[h].first < vf.interval50[h].second);
            CHECK(vf.interval50[h].second < vf.interval85[h].second);
        }
    }
    REQUIRE(result.report.size() == 2);
    CHECK(result.report[0].metrics.mean_nll.has_value());
    // augmented variant trains on synthetic + real windows
    CHECK(result.report[1].size > result.report[0].size);

    auto forecasts_csv = slurp(cfg.output_dir / "forecasts.csv");
    CHECK(forecasts_csv.rfind("variant,h,mu,lo50,hi50,lo85,hi85,actual\n", 0) == 0);
    std::size_t lines = std::count(forecasts_csv.begin(), forecasts_csv.end(), '\n');
    CHECK(lines == 7);  // header + 2 variants x 3 horizon steps
    fs::remove_all(dir);
}

TEST_CASE("run_augmentation: early cutoff is rejected") {
    auto dir = temp_dir("aug_cut");
    write_file(dir / "real.csv", "2020-01-01,1\n2020-01-02,2\n2020-01-03,3\n");
    pipelines::ExperimentConfig cfg;
    cfg.kind = pipelines::ExperimentConfig::Kind::Augmentation;
    cfg.generation = sir_gen(2, 1);
    cfg.w_in = 5;
    cfg.w_out = 3;
    cfg.real_data_path = (dir / "real.csv").string();
    cfg.train_cutoff_index = 8;  // passes config validation but exceeds the series
    cfg.smoothing_window = 1;
    cfg.output_dir = dir / "out";
    ml::ModelSpec nn;
    nn.family = ml::ModelSpec::Family::Nn;
    nn.head = ml::ModelSpec::Head::StudentT;
    nn.epochs = 1;
    cfg.models = {nn};
    CHECK_THROWS_AS(pipelines::run_augmentation(cfg), pipelines::CutoffTooEarly);
    fs::remove_all(dir);
}

TEST_CASE("experiment config json: round trip and schema checks") {
    pipelines::ExperimentConfig cfg;
    cfg.kind = pipelines::ExperimentConfig::Kind::DataNeeds;
    cfg.generation = sir_gen(2, 5);
    cfg.dataset_sizes = {10, 20};
    cfg.master_seed = 5;
    cfg.output_dir = "out";
    ml::ModelSpec linear;
    linear.family = ml::ModelSpec::Family::Linear;
    cfg.models = {linear};

    auto j = pipelines::to_json(cfg);
    auto back = pipelines::experiment_config_from_json(j);
    CHECK(pipelines::to_json(back) == j);

    SUBCASE("wrong schema version") {
        j["schema"] = 2;
        CHECK_THROWS_AS(pipelines::experiment_config_from_json(j), util::ConfigError);
    }
    SUBCASE("unknown key is named in the error") {
        j["dataset_sises"] = {1};
        try {
            pipelines::experiment_config_from_json(j);
            FAIL("expected ConfigError");
        } catch (const util::ConfigError& e) {
            CHECK(std::string(e.what()).find("dataset_sises") != std::string::npos);
        }
    }
    SUBCASE("unsorted sizes are rejected") {
        j["dataset_sizes"] = {20, 10};
        CHECK_THROWS_AS(pipelines::experiment_config_from_json(j), util::ConfigError);
    }
}

TEST_CASE("cli: generate is deterministic and validate-config reports errors") {
    auto dir = temp_dir("cli");
    auto cfg_path = dir / "gen.json";
    auto gen = sir_gen(2, 77);
    write_file(cfg_path, datagen::to_json(gen).dump(2));

    SUBCASE("generate writes identical datasets for the same config") {
        auto out_a = (dir / "a").string();
        auto out_b = (dir / "b").string();
        CHECK(run_cli({"generate", "--config", cfg_path.string(), "--out", out_a}) == 0);
        CHECK(run_cli({"generate", "--config", cfg_path.string(), "--out", out_b}) == 0);
        CHECK(slurp(dir / "a" / "series_0.csv") == slurp(dir / "b" / "series_0.csv"));
        CHECK(slurp(dir / "a" / "series_1.csv") == slurp(dir / "b" / "series_1.csv"));
    }

    SUBCASE("--seed overrides the config seed") {
        auto out_a = (dir / "sa").string();
        auto out_b = (dir / "sb").string();
        CHECK(run_cli({"--seed", "1", "generate", "--config", cfg_path.string(), "--out", out_a}) ==
              0);
        CHECK(run_cli({"generate", "--config", cfg_path.string(), "--out", out_b}) == 0);
        CHECK(slurp(dir / "sa" / "series_0.csv") != slurp(dir / "sb" / "series_0.csv"));
    }

    SUBCASE("validate-config accepts a good file") {
        CHECK(run_cli({"validate-config", cfg_path.string()}) == 0);
    }

    SUBCASE("validate-config rejects an unknown key with exit code 1") {
        auto j = datagen::to_json(gen);
        j["n_serise"] = 3;
        write_file(dir / "bad.json", j.dump(2));
        CHECK(run_cli({"validate-config", (dir / "bad.json").string()}) == 1);
    }

    SUBCASE("unreadable config file exits with 2") {
        CHECK(run_cli({"validate-config", (dir / "nope.json").string()}) == 2);
    }

    SUBCASE("missing subcommand exits with 1") {
        CHECK(run_cli({}) == 1);
    }

    SUBCASE("experiment requires a nested subcommand") {
        CHECK(run_cli({"experiment"}) == 1);
    }
    fs::remove_all(dir);
}

TEST_CASE("cli: experiment data-needs runs end to end") {
    auto dir = temp_dir("cli_dn");
    pipelines::ExperimentConfig cfg;
    cfg.kind = pipelines::ExperimentConfig::Kind::DataNeeds;
    cfg.generation = sir_gen(1, 3);
    cfg.target_column = "I";
    cfg.dataset_sizes = {2};
    cfg.test_fraction = 0.5;
    cfg.master_seed = 8;
    cfg.output_dir = dir / "out";
    ml::ModelSpec linear;
    linear.family = ml::ModelSpec::Family::Linear;
    cfg.models = {linear};
    write_file(dir / "exp.json", pipelines::to_json(cfg).dump(2));

    CHECK(run_cli({"experiment", "data-needs", "--config", (dir / "exp.json").string()}) == 0);
    CHECK(fs::exists(dir / "out" / "report.csv"));
    fs::remove_all(dir);
}
