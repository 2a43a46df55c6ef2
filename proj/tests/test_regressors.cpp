#include <doctest.h>

#include <algorithm>
#include <cmath>

#ifdef SIMGEN_HAVE_EIGEN
#include <Eigen/Dense>
#endif

#include "simgen/datagen/rng.hpp"
#include "simgen/ml/forest.hpp"
#include "simgen/ml/knn.hpp"
#include "simgen/ml/linear.hpp"
#include "simgen/ml/tree.hpp"

using namespace simgen;

namespace {

/// Assemble a WindowedDataset from explicit rows, with the same column
/// statistics make_windows would compute.
ml::WindowedDataset make_ds(std::vector<std::vector<double>> X,
                            std::vector<std::vector<double>> Y) {
    ml::WindowedDataset ds;
    ds.w_in = X[0].size();
    ds.w_out = Y[0].size();
    std::size_t n = X.size(), w = ds.w_in;
    ds.x_mean.assign(w, 0.0);
    ds.x_std.assign(w, 0.0);
    for (const auto& row : X)
        for (std::size_t j = 0; j < w; ++j) ds.x_mean[j] += row[j];
    for (double& m : ds.x_mean) m /= double(n);
    for (const auto& row : X)
        for (std::size_t j = 0; j < w; ++j) {
            double d = row[j] - ds.x_mean[j];
            ds.x_std[j] += d * d;
        }
    for (double& s : ds.x_std) s = s > 0.0 ? std::sqrt(s / double(n)) : 1.0;
    ds.X = std::move(X);
    ds.Y = std::move(Y);
    return ds;
}

ml::WindowedDataset random_ds(std::size_t n, std::size_t w_in, std::size_t w_out,
                              std::uint64_t seed) {
    datagen::Rng rng(seed);
    std::vector<std::vector<double>> X, Y;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> x, y;
        for (std::size_t j = 0; j < w_in; ++j) x.push_back(rng.uniform(-2.0, 2.0));
        for (std::size_t j = 0; j < w_out; ++j)
            y.push_back(std::sin(x[j % w_in]) + 0.1 * rng.normal());
        X.push_back(std::move(x));
        Y.push_back(std::move(y));
    }
    return make_ds(std::move(X), std::move(Y));
}

}  // namespace

TEST_CASE("linear: recovers an exact linear map") {
    datagen::Rng rng(1);
    std::vector<std::vector<double>> X, Y;
    for (int i = 0; i < 40; ++i) {
        double a = rng.uniform(-3.0, 3.0), b = rng.uniform(-3.0, 3.0);
        X.push_back({a, b});
        Y.push_back({2.0 * a - b + 0.5, a + 3.0 * b});
    }
    auto model = ml::LinearModel::fit(make_ds(X, Y));
    CHECK(model.coefficients[0][0] == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(model.coefficients[1][0] == doctest::Approx(-1.0).epsilon(1e-6));
    CHECK(model.intercept[0] == doctest::Approx(0.5).epsilon(1e-6));
    auto pred = model.predict({1.0, 1.0});
    CHECK(pred[0] == doctest::Approx(1.5).epsilon(1e-6));
    CHECK(pred[1] == doctest::Approx(4.0).epsilon(1e-6));
}

TEST_CASE("linear: constant targets collapse to the intercept") {
    auto ds = random_ds(25, 3, 1, 2);
    for (auto& y : ds.Y) y = {7.25};
    auto model = ml::LinearModel::fit(ds);
    CHECK(model.predict({0.4, -1.0, 2.0})[0] == doctest::Approx(7.25).epsilon(1e-6));
}

#ifdef SIMGEN_HAVE_EIGEN
TEST_CASE("linear: matches an SVD pseudo-inverse oracle on a noisy problem") {
    auto ds = random_ds(60, 4, 2, 3);
    auto model = ml::LinearModel::fit(ds);

    std::size_t n = ds.size(), w = ds.w_in;
    Eigen::MatrixXd A(n, w + 1), B(n, ds.w_out);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < w; ++j) A(i, j) = ds.X[i][j];
        A(i, w) = 1.0;
        for (std::size_t o = 0; o < ds.w_out; ++o) B(i, o) = ds.Y[i][o];
    }
    Eigen::MatrixXd W = A.completeOrthogonalDecomposition().solve(B);
    for (std::size_t j = 0; j < w; ++j)
        for (std::size_t o = 0; o < ds.w_out; ++o)
            CHECK(model.coefficients[j][o] == doctest::Approx(W(j, o)).epsilon(1e-5));
    for (std::size_t o = 0; o < ds.w_out; ++o)
        CHECK(model.intercept[o] == doctest::Approx(W(w, o)).epsilon(1e-5));
}
#endif

TEST_CASE("knn: k = 1 memorizes the training set") {
    auto ds = random_ds(20, 3, 2, 4);
    auto model = ml::KnnModel::fit(ds, 1);
    for (std::size_t i = 0; i < ds.size(); ++i) {
        auto pred = model.predict(ds.X[i]);
        CHECK(pred == ds.Y[i]);
    }
}

TEST_CASE("knn: k = n predicts the global target mean") {
    auto ds = random_ds(15, 2, 1, 5);
    auto model = ml::KnnModel::fit(ds, 15);
    double mean = 0.0;
    for (const auto& y : ds.Y) mean += y[0];
    mean /= 15.0;
    CHECK(model.predict({0.1, 0.1})[0] == doctest::Approx(mean).epsilon(1e-12));
}

TEST_CASE("knn: matches a brute-force search at k = 3") {
    auto ds = random_ds(30, 4, 2, 6);
    auto model = ml::KnnModel::fit(ds, 3);
    datagen::Rng rng(7);
    for (int q = 0; q < 20; ++q) {
        std::vector<double> query;
        for (int j = 0; j < 4; ++j) query.push_back(rng.uniform(-2.0, 2.0));

        auto z = ds.normalize(query);
        std::vector<std::pair<double, std::size_t>> by_dist;
        for (std::size_t i = 0; i < ds.size(); ++i) {
            auto zi = ds.normalize(ds.X[i]);
            double d2 = 0.0;
            for (std::size_t j = 0; j < z.size(); ++j) d2 += (z[j] - zi[j]) * (z[j] - zi[j]);
            by_dist.emplace_back(d2, i);
        }
        std::sort(by_dist.begin(), by_dist.end());
        std::vector<double> expected(2, 0.0);
        for (int t = 0; t < 3; ++t)
            for (int o = 0; o < 2; ++o) expected[o] += ds.Y[by_dist[t].second][o] / 3.0;

        auto pred = model.predict(query);
        CHECK(pred[0] == doctest::Approx(expected[0]).epsilon(1e-9));
        CHECK(pred[1] == doctest::Approx(expected[1]).epsilon(1e-9));
    }
}

TEST_CASE("knn: equidistant ties resolve to the lower training index") {
    auto ds = make_ds({{-1.0}, {1.0}, {3.0}}, {{10.0}, {20.0}, {30.0}});
    auto model = ml::KnnModel::fit(ds, 1);
    // query 0 is equidistant from rows 0 and 1
    CHECK(model.predict({0.0})[0] == 10.0);
}

TEST_CASE("knn: k larger than the training set throws") {
    auto ds = random_ds(5, 2, 1, 8);
    CHECK_THROWS_AS(ml::KnnModel::fit(ds, 6), ml::KTooLarge);
}

TEST_CASE("tree: pure targets give a single leaf") {
    auto ds = random_ds(12, 3, 2, 9);
    for (auto& y : ds.Y) y = {1.0, -2.0};
    auto model = ml::TreeModel::fit(ds, 10, 2);
    REQUIRE(model.nodes.size() == 1);
    CHECK(model.nodes[0].feature == -1);
    CHECK(model.predict({0.0, 0.0, 0.0}) == std::vector<double>{1.0, -2.0});
}

TEST_CASE("tree: learns a step function with one midpoint split") {
    std::vector<std::vector<double>> X, Y;
    for (double x : {0.0, 1.0, 2.0, 3.0}) {
        X.push_back({x});
        Y.push_back({x < 2.0 ? -1.0 : 1.0});
    }
    auto model = ml::TreeModel::fit(make_ds(X, Y), 1, 1);
    REQUIRE(model.nodes.size() == 3);
    CHECK(model.nodes[0].feature == 0);
    CHECK(model.nodes[0].threshold == doctest::Approx(1.5));
    CHECK(model.predict({0.7})[0] == -1.0);
    CHECK(model.predict({2.2})[0] == 1.0);
}

TEST_CASE("tree: min_leaf = n forbids any split") {
    auto ds = random_ds(10, 2, 1, 10);
    auto model = ml::TreeModel::fit(ds, 10, 10);
    REQUIRE(model.nodes.size() == 1);
    double mean = 0.0;
    for (const auto& y : ds.Y) mean += y[0];
    CHECK(model.nodes[0].value[0] == doctest::Approx(mean / 10.0).epsilon(1e-12));
}

TEST_CASE("tree: fits the training data better as depth grows") {
    auto ds = random_ds(80, 3, 1, 11);
    double prev = 1e300;
    for (std::size_t depth : {1, 3, 8}) {
        auto model = ml::TreeModel::fit(ds, depth, 1);
        double sse = 0.0;
        for (std::size_t i = 0; i < ds.size(); ++i) {
            double r = model.predict(ds.X[i])[0] - ds.Y[i][0];
            sse += r * r;
        }
        CHECK(sse <= prev + 1e-12);
        prev = sse;
    }
}

TEST_CASE("forest: degenerate settings reproduce a single tree") {
    auto ds = random_ds(30, 3, 1, 12);
    ml::ModelSpec spec;
    spec.family = ml::ModelSpec::Family::Forest;
    spec.n_trees = 1;
    spec.bootstrap = false;
    spec.feature_fraction = 1.0;
    spec.max_depth = 6;
    spec.min_leaf = 2;
    auto forest = ml::ForestModel::fit(ds, spec);
    auto tree = ml::TreeModel::fit(ds, 6, 2);
    for (std::size_t i = 0; i < ds.size(); ++i)
        CHECK(forest.predict(ds.X[i]) == tree.predict(ds.X[i]));
}

TEST_CASE("forest: seeded training is deterministic") {
    auto ds = random_ds(40, 4, 2, 13);
    ml::ModelSpec spec;
    spec.family = ml::ModelSpec::Family::Forest;
    spec.n_trees = 12;
    spec.feature_fraction = 0.5;
    spec.max_depth = 5;
    spec.seed = 77;
    auto a = ml::ForestModel::fit(ds, spec);
    auto b = ml::ForestModel::fit(ds, spec);
    REQUIRE(a.trees.size() == 12);
    datagen::Rng rng(14);
    for (int q = 0; q < 10; ++q) {
        std::vector<double> x;
        for (int j = 0; j < 4; ++j) x.push_back(rng.uniform(-2.0, 2.0));
        CHECK(a.predict(x) == b.predict(x));
    }

    spec.seed = 78;
    auto c = ml::ForestModel::fit(ds, spec);
    bool any_diff = false;
    for (std::size_t i = 0; i < ds.size() && !any_diff; ++i)
        any_diff = a.predict(ds.X[i]) != c.predict(ds.X[i]);
    CHECK(any_diff);
}

TEST_CASE("forest: averaging smooths single-tree overfit on held-out data") {
    auto train = random_ds(120, 3, 1, 15);
    auto test = random_ds(60, 3, 1, 16);

    ml::ModelSpec spec;
    spec.family = ml::ModelSpec::Family::Forest;
    spec.n_trees = 40;
    spec.max_depth = 12;
    spec.min_leaf = 1;
    spec.seed = 5;
    auto forest = ml::ForestModel::fit(train, spec);
    auto tree = ml::TreeModel::fit(train, 12, 1);

    double sse_forest = 0.0, sse_tree = 0.0;
    for (std::size_t i = 0; i < test.size(); ++i) {
        double rf = forest.predict(test.X[i])[0] - test.Y[i][0];
        double rt = tree.predict(test.X[i])[0] - test.Y[i][0];
        sse_forest += rf * rf;
        sse_tree += rt * rt;
    }
    CHECK(sse_forest < sse_tree);
}

TEST_CASE("model factory dispatches on family and round-trips through json") {
    auto ds = random_ds(25, 3, 2, 17);
    for (auto family : {ml::ModelSpec::Family::Linear, ml::ModelSpec::Family::Knn,
                        ml::ModelSpec::Family::Tree, ml::ModelSpec::Family::Forest}) {
        ml::ModelSpec spec;
        spec.family = family;
        spec.k = 3;
        spec.n_trees = 5;
        spec.seed = 21;
        auto model = ml::fit_model(ds, spec);
        auto restored = ml::model_from_json(model->to_json());
        for (std::size_t i = 0; i < ds.size(); ++i)
            CHECK(model->predict(ds.X[i]) == restored->predict(ds.X[i]));
    }
}
