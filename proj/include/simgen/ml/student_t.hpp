#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

namespace simgen::ml {

struct InvalidParams : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct InvalidLevel : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct TParams {
    double mu = 0.0;
    double sigma = 1.0;
    double nu = 3.0;
};

/// Per-horizon-step Student's-t forecast.
struct ForecastDistribution {
    std::vector<TParams> steps;
};

/// Negative log density of a location-scale Student's t at y.
double student_t_nll(double mu, double sigma, double nu, double y);

/// Summed over horizon steps; y must match the horizon length.
double student_t_nll(const ForecastDistribution& dist, const std::vector<double>& y);

/// Regularized incomplete beta function I_x(a, b).
double reg_incomplete_beta(double a, double b, double x);

/// CDF of the standard Student's t with nu degrees of freedom.
double t_cdf(double nu, double t);

/// Quantile by bisection on the CDF (tolerance 1e-10).
double t_quantile(double nu, double p);

/// Central interval: mu +/- sigma * t_quantile(nu, (1+level)/2) per step.
std::vector<std::pair<double, double>> interval(const ForecastDistribution& dist, double level);

double digamma(double x);

}  // namespace simgen::ml
