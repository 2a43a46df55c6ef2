#include <doctest.h>

#include <cmath>

#include "simgen/ml/student_t.hpp"

using namespace simgen::ml;

TEST_CASE("student_t_nll: closed-form value at the Cauchy mode") {
    // nu = 1, sigma = 1, y = mu: density is 1/pi, so NLL = ln(pi)
    CHECK(student_t_nll(0.0, 1.0, 1.0, 0.0) == doctest::Approx(std::log(M_PI)).epsilon(1e-9));
}

TEST_CASE("student_t_nll: minimized at y = mu") {
    double at_mode = student_t_nll(2.0, 0.7, 4.0, 2.0);
    for (double off : {0.1, -0.1, 1.0, -3.0})
        CHECK(student_t_nll(2.0, 0.7, 4.0, 2.0 + off) > at_mode);
}

TEST_CASE("student_t_nll: symmetric about mu and scale-consistent") {
    CHECK(student_t_nll(1.0, 0.5, 3.0, 1.8) ==
          doctest::Approx(student_t_nll(1.0, 0.5, 3.0, 0.2)).epsilon(1e-12));
    // location-scale: NLL(mu, sigma, nu, y) = NLL(0, 1, nu, (y-mu)/sigma) + ln(sigma)
    double z = (1.8 - 1.0) / 0.5;
    CHECK(student_t_nll(1.0, 0.5, 3.0, 1.8) ==
          doctest::Approx(student_t_nll(0.0, 1.0, 3.0, z) + std::log(0.5)).epsilon(1e-12));
}

TEST_CASE("student_t_nll: large nu approaches the Gaussian") {
    double y = 1.3;
    double gauss = 0.5 * std::log(2.0 * M_PI) + 0.5 * y * y;
    CHECK(student_t_nll(0.0, 1.0, 1e6, y) == doctest::Approx(gauss).epsilon(1e-3));
}

TEST_CASE("student_t_nll: invalid parameters throw") {
    CHECK_THROWS_AS(student_t_nll(0.0, 0.0, 3.0, 1.0), InvalidParams);
    CHECK_THROWS_AS(student_t_nll(0.0, 1.0, 0.0, 1.0), InvalidParams);
    CHECK_THROWS_AS(student_t_nll(0.0, -1.0, 3.0, 1.0), InvalidParams);
}

TEST_CASE("student_t_nll: vector form sums per-step terms") {
    ForecastDistribution dist;
    dist.steps = {{0.0, 1.0, 3.0}, {1.0, 2.0, 5.0}};
    std::vector<double> y{0.5, 2.0};
    double expected = student_t_nll(0.0, 1.0, 3.0, 0.5) + student_t_nll(1.0, 2.0, 5.0, 2.0);
    CHECK(student_t_nll(dist, y) == doctest::Approx(expected).epsilon(1e-12));
    CHECK_THROWS_AS(student_t_nll(dist, {0.5}), InvalidParams);
}

TEST_CASE("reg_incomplete_beta: boundary and symmetry") {
    CHECK(reg_incomplete_beta(2.0, 3.0, 0.0) == 0.0);
    CHECK(reg_incomplete_beta(2.0, 3.0, 1.0) == 1.0);
    // I_x(1,1) = x
    CHECK(reg_incomplete_beta(1.0, 1.0, 0.37) == doctest::Approx(0.37).epsilon(1e-10));
    // I_x(a,b) = 1 - I_{1-x}(b,a)
    CHECK(reg_incomplete_beta(2.5, 4.0, 0.3) ==
          doctest::Approx(1.0 - reg_incomplete_beta(4.0, 2.5, 0.7)).epsilon(1e-10));
}

TEST_CASE("t_cdf: hand values") {
    // Cauchy: F(t) = 1/2 + atan(t)/pi
    for (double t : {-2.0, -0.5, 0.0, 1.0, 4.0})
        CHECK(t_cdf(1.0, t) == doctest::Approx(0.5 + std::atan(t) / M_PI).epsilon(1e-10));
    // t with 2 dof: F(t) = 1/2 + t / (2*sqrt(2 + t^2))
    for (double t : {-1.5, 0.0, 0.8, 3.0})
        CHECK(t_cdf(2.0, t) ==
              doctest::Approx(0.5 + t / (2.0 * std::sqrt(2.0 + t * t))).epsilon(1e-10));
    CHECK(t_cdf(5.0, 0.0) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("t_quantile: inverts the CDF") {
    CHECK(t_quantile(1.0, 0.75) == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(t_quantile(3.0, 0.5) == doctest::Approx(0.0).epsilon(1e-8));
    CHECK(t_quantile(4.0, 0.25) == doctest::Approx(-t_quantile(4.0, 0.75)).epsilon(1e-8));
    for (double p : {0.01, 0.2, 0.6, 0.925, 0.99})
        for (double nu : {1.0, 2.3, 7.0, 50.0})
            CHECK(t_cdf(nu, t_quantile(nu, p)) == doctest::Approx(p).epsilon(1e-8));
    CHECK_THROWS_AS(t_quantile(3.0, 0.0), InvalidLevel);
    CHECK_THROWS_AS(t_quantile(3.0, 1.0), InvalidLevel);
}

TEST_CASE("interval: centered, ordered and nested") {
    ForecastDistribution dist;
    dist.steps = {{10.0, 2.0, 4.0}, {-1.0, 0.5, 8.0}};
    auto i50 = interval(dist, 0.5);
    auto i85 = interval(dist, 0.85);
    REQUIRE(i50.size() == 2);
    for (std::size_t k = 0; k < 2; ++k) {
        double mu = dist.steps[k].mu;
        CHECK(i50[k].first < mu);
        CHECK(i50[k].second > mu);
        CHECK(mu - i50[k].first == doctest::Approx(i50[k].second - mu).epsilon(1e-9));
        // the 85% band strictly contains the 50% band
        CHECK(i85[k].first < i50[k].first);
        CHECK(i85[k].second > i50[k].second);
    }
    CHECK_THROWS_AS(interval(dist, 0.0), InvalidLevel);
    CHECK_THROWS_AS(interval(dist, 1.0), InvalidLevel);
}

TEST_CASE("interval: 50% band of a Cauchy forecast is mu +/- sigma") {
    ForecastDistribution dist;
    dist.steps = {{5.0, 2.0, 1.0}};
    auto band = interval(dist, 0.5);
    CHECK(band[0].first == doctest::Approx(3.0).epsilon(1e-7));
    CHECK(band[0].second == doctest::Approx(7.0).epsilon(1e-7));
}

TEST_CASE("digamma: reference values") {
    const double euler = 0.57721566490153286;
    CHECK(digamma(1.0) == doctest::Approx(-euler).epsilon(1e-8));
    CHECK(digamma(2.0) == doctest::Approx(1.0 - euler).epsilon(1e-8));
    CHECK(digamma(0.5) == doctest::Approx(-euler - 2.0 * std::log(2.0)).epsilon(1e-8));
    // recurrence psi(x+1) = psi(x) + 1/x
    for (double x : {0.3, 1.7, 4.2})
        CHECK(digamma(x + 1.0) == doctest::Approx(digamma(x) + 1.0 / x).epsilon(1e-8));
}
