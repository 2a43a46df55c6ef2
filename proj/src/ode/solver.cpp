#include "simgen/ode/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace simgen::ode {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784,
                 a76 = 11.0 / 84;
// Embedded 4th-order error weights.
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;
// Dense-output weights.
constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

// PI controller constants (Hairer & Wanner).
constexpr double kSafe = 0.9, kFacMin = 0.2, kFacMax = 10.0;
constexpr double kBeta = 0.04, kAlpha = 0.2 - 0.75 * kBeta;

void check_finite(std::span<const double> v, double t) {
    for (double x : v)
        if (!std::isfinite(x))
            throw NonFiniteRhs("non-finite value encountered at t = " + std::to_string(t));
}

// One Dormand-Prince integration in progress. Holds stage vectors and the
// dense-output polynomial of the most recently accepted step.
class Dopri5 {
public:
    Dopri5(const OdeSystem& system, std::span<const double> params, const StateVector& y0,
           double t0, const SolverConfig& cfg, double span)
        : sys_(system), p_(params), cfg_(cfg), n_(y0.size()), t_(t0), y_(y0) {
        if (n_ != system.dimension())
            throw std::invalid_argument("initial state dimension does not match system");
        check_finite(y_, t_);
        for (auto* v : {&k1_, &k2_, &k3_, &k4_, &k5_, &k6_, &k7_, &ynew_, &ytmp_})
            v->resize(n_);
        for (auto* v : {&r1_, &r2_, &r3_, &r4_, &r5_}) v->resize(n_);
        h_max_ = cfg.h_max > 0.0 ? cfg.h_max : span;
        h_ = cfg.h_init > 0.0 ? cfg.h_init : 1e-3 * span;
        h_ = std::clamp(h_, cfg.h_min, h_max_);
        fixed_step_ = cfg.h_min == h_max_;
        eval(t_, y_, k1_);  // FSAL seed
    }

    double t() const { return t_; }
    const StateVector& y() const { return y_; }
    const StateVector& rhs_now() const { return k1_; }

    // Advance by one accepted step, not beyond t_limit. Returns the step
    // interval [t_prev, t].
    std::pair<double, double> step(double t_limit) {
        for (;;) {
            if (++steps_taken_ > cfg_.max_steps)
                throw StepLimitExceeded("step limit of " + std::to_string(cfg_.max_steps) +
                                        " exceeded at t = " + std::to_string(t_));
            double h = std::min(h_, h_max_);
            bool last = t_ + h >= t_limit;
            if (last) h = t_limit - t_;
            attempt(h);
            double err = fixed_step_ ? 0.0 : error_norm(h);
            if (fixed_step_ || err <= 1.0) {
                accept(h, err);
                double t_prev = t_;
                t_ = last ? t_limit : t_ + h;
                return {t_prev, t_};
            }
            // rejected: shrink and retry
            double fac11 = std::pow(err, kAlpha);
            h_ = h / std::min(1.0 / kFacMin, fac11 / kSafe);
            if (h_ < cfg_.h_min)
                throw StepUnderflow("step size fell below h_min at t = " + std::to_string(t_) +
                                    " (system may be stiff; consider the implicit solver)");
        }
    }

    // Dense-output evaluation inside the last accepted step [t_prev, t].
    void interpolate(double theta, StateVector& out) const {
        double th1 = 1.0 - theta;
        for (std::size_t i = 0; i < n_; ++i)
            out[i] = r1_[i] +
                     theta * (r2_[i] + th1 * (r3_[i] + theta * (r4_[i] + th1 * r5_[i])));
    }

private:
    void eval(double t, const StateVector& y, StateVector& out) {
        sys_.rhs(t, y, p_, out);
        check_finite(out, t);
    }

    void attempt(double h) {
        for (std::size_t i = 0; i < n_; ++i) ytmp_[i] = y_[i] + h * a21 * k1_[i];
        eval(t_ + c2 * h, ytmp_, k2_);
        for (std::size_t i = 0; i < n_; ++i)
            ytmp_[i] = y_[i] + h * (a31 * k1_[i] + a32 * k2_[i]);
        eval(t_ + c3 * h, ytmp_, k3_);
        for (std::size_t i = 0; i < n_; ++i)
            ytmp_[i] = y_[i] + h * (a41 * k1_[i] + a42 * k2_[i] + a43 * k3_[i]);
        eval(t_ + c4 * h, ytmp_, k4_);
        for (std::size_t i = 0; i < n_; ++i)
            ytmp_[i] = y_[i] + h * (a51 * k1_[i] + a52 * k2_[i] + a53 * k3_[i] + a54 * k4_[i]);
        eval(t_ + c5 * h, ytmp_, k5_);
        for (std::size_t i = 0; i < n_; ++i)
            ytmp_[i] = y_[i] + h * (a61 * k1_[i] + a62 * k2_[i] + a63 * k3_[i] + a64 * k4_[i] +
                                    a65 * k5_[i]);
        eval(t_ + h, ytmp_, k6_);
        for (std::size_t i = 0; i < n_; ++i)
            ynew_[i] = y_[i] + h * (a71 * k1_[i] + a73 * k3_[i] + a74 * k4_[i] + a75 * k5_[i] +
                                    a76 * k6_[i]);
        eval(t_ + h, ynew_, k7_);  // FSAL stage
    }

    double error_norm(double h) const {
        double acc = 0.0;
        for (std::size_t i = 0; i < n_; ++i) {
            double e = h * (e1 * k1_[i] + e3 * k3_[i] + e4 * k4_[i] + e5 * k5_[i] + e6 * k6_[i] +
                            e7 * k7_[i]);
            double sc = cfg_.atol + cfg_.rtol * std::max(std::abs(y_[i]), std::abs(ynew_[i]));
            acc += (e / sc) * (e / sc);
        }
        return std::sqrt(acc / static_cast<double>(n_));
    }

    void accept(double h, double err) {
        for (std::size_t i = 0; i < n_; ++i) {
            double dy = ynew_[i] - y_[i];
            r1_[i] = y_[i];
            r2_[i] = dy;
            r3_[i] = h * k1_[i] - dy;
            r4_[i] = dy - h * k7_[i] - r3_[i];
            r5_[i] = h * (d1 * k1_[i] + d3 * k3_[i] + d4 * k4_[i] + d5 * k5_[i] + d6 * k6_[i] +
                          d7 * k7_[i]);
        }
        y_.swap(ynew_);
        k1_.swap(k7_);  // FSAL
        if (!fixed_step_) {
            double fac11 = std::pow(std::max(err, 1e-32), kAlpha);
            double fac = fac11 / std::pow(err_old_, kBeta);
            fac = std::clamp(fac / kSafe, 1.0 / kFacMax, 1.0 / kFacMin);
            h_ = std::clamp(h / fac, cfg_.h_min, h_max_);
            err_old_ = std::max(err, 1e-4);
        }
    }

    const OdeSystem& sys_;
    std::span<const double> p_;
    const SolverConfig& cfg_;
    std::size_t n_;
    double t_;
    StateVector y_;
    StateVector k1_, k2_, k3_, k4_, k5_, k6_, k7_, ynew_, ytmp_;
    StateVector r1_, r2_, r3_, r4_, r5_;  // dense-output coefficients
    double h_ = 0.0, h_max_ = 0.0, err_old_ = 1e-4;
    bool fixed_step_ = false;
    std::size_t steps_taken_ = 0;
};

// Solve A x = b in place by Gaussian elimination with partial pivoting.
// A is row-major n x n; b is overwritten with the solution.
void solve_linear(std::vector<double>& a, std::vector<double>& b, std::size_t n) {
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r * n + col]) > std::abs(a[piv * n + col])) piv = r;
        if (a[piv * n + col] == 0.0)
            throw NewtonDivergence("singular Newton matrix in implicit solver");
        if (piv != col) {
            for (std::size_t c = 0; c < n; ++c) std::swap(a[col * n + c], a[piv * n + c]);
            std::swap(b[col], b[piv]);
        }
        for (std::size_t r = col + 1; r < n; ++r) {
            double f = a[r * n + col] / a[col * n + col];
            if (f == 0.0) continue;
            for (std::size_t c = col; c < n; ++c) a[r * n + c] -= f * a[col * n + c];
            b[r] -= f * b[col];
        }
    }
    for (std::size_t ri = n; ri-- > 0;) {
        double s = b[ri];
        for (std::size_t c = ri + 1; c < n; ++c) s -= a[ri * n + c] * b[c];
        b[ri] = s / a[ri * n + ri];
    }
}

void fill_jacobian(const OdeSystem& sys, std::span<const double> p, double t,
                   const StateVector& y, std::vector<double>& jac) {
    std::size_t n = y.size();
    if (sys.has_jacobian()) {
        sys.jacobian(t, y, p, jac);
        return;
    }
    StateVector yp = y, ym = y, fp(n), fm(n);
    for (std::size_t j = 0; j < n; ++j) {
        double step = 1e-6 * (1.0 + std::abs(y[j]));
        yp[j] = y[j] + step;
        ym[j] = y[j] - step;
        sys.rhs(t, yp, p, fp);
        sys.rhs(t, ym, p, fm);
        for (std::size_t i = 0; i < n; ++i) jac[i * n + j] = (fp[i] - fm[i]) / (2.0 * step);
        yp[j] = y[j];
        ym[j] = y[j];
    }
}

double inf_norm(const StateVector& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

// One implicit trapezoidal step from (t, y) to t + h via damped Newton.
StateVector trapezoidal_step(const OdeSystem& sys, std::span<const double> p, double t,
                             const StateVector& y, double h, double tol) {
    constexpr int kMaxNewton = 25;
    std::size_t n = y.size();
    StateVector f0(n), fx(n), x = y, res(n);
    sys.rhs(t, y, p, f0);
    check_finite(f0, t);
    // predictor: explicit Euler
    for (std::size_t i = 0; i < n; ++i) x[i] = y[i] + h * f0[i];

    std::vector<double> jac(n * n), mat(n * n), delta(n);
    auto residual = [&](const StateVector& xv, StateVector& out) {
        sys.rhs(t + h, xv, p, fx);
        check_finite(fx, t + h);
        for (std::size_t i = 0; i < n; ++i)
            out[i] = xv[i] - y[i] - 0.5 * h * (f0[i] + fx[i]);
    };
    residual(x, res);
    double rnorm = inf_norm(res);
    for (int it = 0; it < kMaxNewton; ++it) {
        if (rnorm < tol) return x;
        fill_jacobian(sys, p, t + h, x, jac);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                mat[i * n + j] = (i == j ? 1.0 : 0.0) - 0.5 * h * jac[i * n + j];
        delta = res;
        solve_linear(mat, delta, n);
        // damping: halve until the residual norm decreases
        double lambda = 1.0;
        StateVector trial(n), tres(n);
        for (int halvings = 0;; ++halvings) {
            for (std::size_t i = 0; i < n; ++i) trial[i] = x[i] - lambda * delta[i];
            residual(trial, tres);
            double tn = inf_norm(tres);
            if (tn < rnorm || halvings >= 8) {
                x = trial;
                res = tres;
                rnorm = tn;
                break;
            }
            lambda *= 0.5;
        }
        if (inf_norm(delta) * std::abs(lambda) < tol && rnorm < std::sqrt(tol)) return x;
    }
    if (rnorm < tol) return x;
    throw NewtonDivergence("Newton iteration failed to converge at t = " + std::to_string(t + h));
}

}  // namespace

Trajectory integrate(const OdeSystem& system, std::span<const double> params,
                     const StateVector& y0, const TimeGrid& grid, const SolverConfig& cfg) {
    grid.validate();
    cfg.validate();
    Trajectory traj;
    traj.grid = grid;
    traj.states.reserve(grid.points.size());

    Dopri5 stepper(system, params, y0, grid.t0, cfg, grid.span() > 0 ? grid.span() : 1.0);
    std::size_t next = 0;
    if (grid.points[next] == grid.t0) {
        traj.states.push_back(y0);
        ++next;
    }
    double t_end = grid.points.back();
    StateVector out(y0.size());
    while (next < grid.points.size()) {
        auto [t_prev, t_now] = stepper.step(t_end);
        double h = t_now - t_prev;
        while (next < grid.points.size() && grid.points[next] <= t_now) {
            double tp = grid.points[next];
            if (tp == t_now) {
                traj.states.push_back(stepper.y());
            } else {
                stepper.interpolate((tp - t_prev) / h, out);
                check_finite(out, tp);
                traj.states.push_back(out);
            }
            ++next;
        }
    }
    return traj;
}

Trajectory integrate_implicit(const OdeSystem& system, std::span<const double> params,
                              const StateVector& y0, const TimeGrid& grid,
                              const SolverConfig& cfg) {
    grid.validate();
    cfg.validate();
    if (y0.size() != system.dimension())
        throw std::invalid_argument("initial state dimension does not match system");
    check_finite(y0, grid.t0);
    double h = cfg.h_init > 0.0 ? cfg.h_init : 1e-3 * (grid.span() > 0 ? grid.span() : 1.0);

    Trajectory traj;
    traj.grid = grid;
    traj.states.reserve(grid.points.size());
    double t = grid.t0;
    StateVector y = y0;
    for (double tp : grid.points) {
        while (t < tp) {
            double step = std::min(h, tp - t);
            y = trapezoidal_step(system, params, t, y, step, cfg.atol);
            t = (t + step >= tp) ? tp : t + step;
        }
        traj.states.push_back(y);
    }
    return traj;
}

SteadyStateResult find_steady_state(const OdeSystem& system, std::span<const double> params,
                                    const StateVector& y0, double tol, double t_max,
                                    const SolverConfig& cfg) {
    if (tol <= 0.0) throw std::invalid_argument("find_steady_state: tol must be positive");
    cfg.validate();
    Dopri5 stepper(system, params, y0, 0.0, cfg, t_max);
    SteadyStateResult res;
    if (inf_norm(stepper.rhs_now()) < tol) {
        res.state = stepper.y();
        res.t = 0.0;
        res.converged = true;
        return res;
    }
    while (stepper.t() < t_max) {
        stepper.step(t_max);
        if (inf_norm(stepper.rhs_now()) < tol) {
            res.state = stepper.y();
            res.t = stepper.t();
            res.converged = true;
            return res;
        }
    }
    res.state = stepper.y();
    res.t = stepper.t();
    res.converged = false;
    return res;
}

}  // namespace simgen::ode
