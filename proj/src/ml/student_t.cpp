#include "simgen/ml/student_t.hpp"

#include <cmath>

namespace simgen::ml {

double student_t_nll(double mu, double sigma, double nu, double y) {
    if (!(sigma > 0.0) || !(nu > 0.0))
        throw InvalidParams("student_t_nll: sigma and nu must be positive");
    double z = (y - mu) / sigma;
    return -std::lgamma(0.5 * (nu + 1.0)) + std::lgamma(0.5 * nu) +
           0.5 * std::log(nu * M_PI * sigma * sigma) +
           0.5 * (nu + 1.0) * std::log1p(z * z / nu);
}

double student_t_nll(const ForecastDistribution& dist, const std::vector<double>& y) {
    if (dist.steps.size() != y.size())
        throw InvalidParams("student_t_nll: horizon length mismatch");
    double total = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i)
        total += student_t_nll(dist.steps[i].mu, dist.steps[i].sigma, dist.steps[i].nu, y[i]);
    return total;
}

namespace {

// Continued fraction for the incomplete beta function (Lentz's method).
double betacf(double a, double b, double x) {
    constexpr int kMaxIter = 300;
    constexpr double kEps = 3e-16, kFpMin = 1e-300;
    double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0, d = 1.0 - qab * x / qap;
    if (std::abs(d) < kFpMin) d = kFpMin;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kFpMin) d = kFpMin;
        c = 1.0 + aa / c;
        if (std::abs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kFpMin) d = kFpMin;
        c = 1.0 + aa / c;
        if (std::abs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps) break;
    }
    return h;
}

}  // namespace

double reg_incomplete_beta(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    double ln_bt = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) +
                   b * std::log1p(-x);
    double bt = std::exp(ln_bt);
    if (x < (a + 1.0) / (a + b + 2.0)) return bt * betacf(a, b, x) / a;
    return 1.0 - bt * betacf(b, a, 1.0 - x) / b;
}

double t_cdf(double nu, double t) {
    if (!(nu > 0.0)) throw InvalidParams("t_cdf: nu must be positive");
    if (t == 0.0) return 0.5;
    double x = nu / (nu + t * t);
    double tail = 0.5 * reg_incomplete_beta(0.5 * nu, 0.5, x);
    return t > 0.0 ? 1.0 - tail : tail;
}

double t_quantile(double nu, double p) {
    if (!(nu > 0.0)) throw InvalidParams("t_quantile: nu must be positive");
    if (!(p > 0.0 && p < 1.0)) throw InvalidLevel("t_quantile: p must be in (0, 1)");
    if (p == 0.5) return 0.0;
    if (p < 0.5) return -t_quantile(nu, 1.0 - p);
    double lo = 0.0, hi = 1.0;
    while (t_cdf(nu, hi) < p) {
        hi *= 2.0;
        if (hi > 1e150) return hi;
    }
    for (int it = 0; it < 200 && hi - lo > 1e-10; ++it) {
        double mid = 0.5 * (lo + hi);
        (t_cdf(nu, mid) < p ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

std::vector<std::pair<double, double>> interval(const ForecastDistribution& dist, double level) {
    if (!(level > 0.0 && level < 1.0))
        throw InvalidLevel("interval: level must be in (0, 1)");
    std::vector<std::pair<double, double>> out;
    out.reserve(dist.steps.size());
    for (const auto& s : dist.steps) {
        double q = t_quantile(s.nu, 0.5 * (1.0 + level));
        out.emplace_back(s.mu - s.sigma * q, s.mu + s.sigma * q);
    }
    return out;
}

double digamma(double x) {
    double result = 0.0;
    while (x < 6.0) {
        result -= 1.0 / x;
        x += 1.0;
    }
    double inv = 1.0 / x, inv2 = inv * inv;
    result += std::log(x) - 0.5 * inv -
              inv2 * (1.0 / 12.0 - inv2 * (1.0 / 120.0 - inv2 / 252.0));
    return result;
}

}  // namespace simgen::ml
