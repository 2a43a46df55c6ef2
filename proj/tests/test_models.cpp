#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "simgen/datagen/rng.hpp"
#include "simgen/models/observable.hpp"
#include "simgen/models/preprocess.hpp"
#include "simgen/models/sir.hpp"
#include "simgen/ode/solver.hpp"

using namespace simgen;

TEST_CASE("sir_rhs: hand-evaluated values") {
    models::SirParams p{0.35, 0.125, 1000.0};
    auto d = models::sir_rhs(0.0, {990.0, 10.0, 0.0}, p);
    CHECK(d[0] == doctest::Approx(-3.465));
    CHECK(d[1] == doctest::Approx(2.215));
    CHECK(d[2] == doctest::Approx(1.25));

    auto quiet = models::sir_rhs(0.0, {990.0, 0.0, 10.0}, p);
    CHECK(quiet[0] == 0.0);
    CHECK(quiet[1] == 0.0);
    CHECK(quiet[2] == 0.0);

    auto depleted = models::sir_rhs(0.0, {0.0, 10.0, 990.0}, p);
    CHECK(depleted[0] == 0.0);
    CHECK(depleted[1] == doctest::Approx(-1.25));
    CHECK(depleted[2] == doctest::Approx(1.25));
}

TEST_CASE("sir_rhs: dS + dI + dR = 0 for random inputs") {
    datagen::Rng rng(7);
    for (int i = 0; i < 200; ++i) {
        models::SirParams p{rng.uniform(0.01, 2.0), rng.uniform(0.01, 2.0),
                            rng.uniform(10.0, 1e8)};
        models::SirState s{rng.uniform(0.0, p.N), rng.uniform(0.0, p.N), rng.uniform(0.0, p.N)};
        auto d = models::sir_rhs(0.0, s, p);
        double scale = std::max({std::abs(d[0]), std::abs(d[1]), std::abs(d[2]), 1.0});
        CHECK(std::abs(d[0] + d[1] + d[2]) <= 1e-15 * scale);
    }
}

TEST_CASE("sir_cumulative_rhs: dC equals the infection flux") {
    models::SirParams p{0.35, 0.125, 1000.0};
    auto d = models::sir_cumulative_rhs(0.0, {990.0, 10.0, 0.0, 0.0}, p);
    CHECK(d[3] == doctest::Approx(3.465));
    CHECK(d[3] == -d[0]);

    auto quiet = models::sir_cumulative_rhs(0.0, {990.0, 0.0, 0.0, 5.0}, p);
    CHECK(quiet[3] == 0.0);
}

TEST_CASE("sir_cumulative: C_sigma is nondecreasing along a trajectory") {
    models::SirCumulativeSystem sys;
    auto grid = simgen::ode::TimeGrid::linspace(0.0, 120.0, 120);
    auto traj = ode::integrate(sys, {{0.33, 0.124, 1000.0}}, {990.0, 10.0, 0.0, 0.0}, grid, {});
    for (std::size_t i = 1; i < traj.size(); ++i)
        CHECK(traj.states[i][3] >= traj.states[i - 1][3] - 1e-9);
}

TEST_CASE("finite_difference") {
    CHECK(models::finite_difference({0, 5, 12, 20}) == std::vector<double>{5, 7, 8});
    CHECK(models::finite_difference({3, 3, 3}) == std::vector<double>{0, 0});
    CHECK_THROWS_AS(models::finite_difference({1.0}), models::SeriesTooShort);

    // telescoping: the differences sum to last - first
    datagen::Rng rng(11);
    std::vector<double> series;
    for (int i = 0; i < 40; ++i) series.push_back(rng.uniform(0.0, 100.0));
    double sum = 0.0;
    for (double d : models::finite_difference(series)) sum += d;
    CHECK(sum == doctest::Approx(series.back() - series.front()).epsilon(1e-12));
}

TEST_CASE("finite_difference inverts cumulative sums") {
    datagen::Rng rng(13);
    std::vector<double> base, cumsum;
    double acc = 0.0;
    for (int i = 0; i < 30; ++i) {
        base.push_back(rng.uniform(0.0, 1.0));
        acc += base.back();
        cumsum.push_back(acc);
    }
    auto back = models::finite_difference(cumsum);
    for (std::size_t i = 1; i < base.size(); ++i)
        CHECK(back[i - 1] == doctest::Approx(base[i]).epsilon(1e-9));
}

TEST_CASE("moving_average") {
    CHECK(models::moving_average({1, 2, 3, 4}, 3) == std::vector<double>{2, 3});
    CHECK(models::moving_average({5, 6, 7}, 1) == std::vector<double>{5, 6, 7});
    auto c = models::moving_average(std::vector<double>(9, 2.5), 4);
    CHECK(c.size() == 6);
    for (double v : c) CHECK(v == doctest::Approx(2.5));
    CHECK_THROWS_AS(models::moving_average({1, 2}, 3), models::WindowTooLarge);
}

TEST_CASE("moving_average: shift invariance and scale equivariance") {
    datagen::Rng rng(17);
    std::vector<double> series;
    for (int i = 0; i < 25; ++i) series.push_back(rng.uniform(-5.0, 5.0));
    auto base = models::moving_average(series, 7);

    std::vector<double> shifted = series, scaled = series;
    for (double& v : shifted) v += 3.75;
    for (double& v : scaled) v *= -2.0;
    auto sh = models::moving_average(shifted, 7);
    auto sc = models::moving_average(scaled, 7);
    for (std::size_t i = 0; i < base.size(); ++i) {
        CHECK(sh[i] == doctest::Approx(base[i] + 3.75).epsilon(1e-12));
        CHECK(sc[i] == doctest::Approx(-2.0 * base[i]).epsilon(1e-12));
    }
}

TEST_CASE("observables on a SIR-cumulative trajectory") {
    models::SirCumulativeSystem sys;
    const double N = 1000.0;
    auto grid = ode::TimeGrid::linspace(0.0, 100.0, 100);
    auto traj = ode::integrate(sys, {{0.35, 0.125, N}}, {990.0, 10.0, 0.0, 0.0}, grid, {});

    auto identity = models::DerivedObservable::column("S", 0).evaluate(traj);
    CHECK(identity.size() == traj.size());
    for (std::size_t i = 0; i < traj.size(); ++i) CHECK(identity[i] == traj.states[i][0]);

    auto infected_ever = models::DerivedObservable::ratio_sum("ever", 1, 2, N).evaluate(traj);
    for (double v : infected_ever) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0 + 1e-12);
    }

    auto new_cases = models::DerivedObservable::difference("new_cases", 3).evaluate(traj);
    auto expected = models::finite_difference(traj.column(3));
    CHECK(new_cases == expected);

    CHECK_THROWS_AS(models::DerivedObservable::column("bad", 9).evaluate(traj),
                    models::IndexOutOfRange);
}
