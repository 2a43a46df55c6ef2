#include "simgen/ml/nn.hpp"

#include <cmath>
#include <numeric>

#include "simgen/ml/student_t.hpp"

namespace simgen::ml {

namespace {

double softplus(double x) { return x > 30.0 ? x : std::log1p(std::exp(x)); }
double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }
constexpr double kSigmaFloor = 1e-6;

}  // namespace

std::size_t Mlp::param_count() const {
    std::size_t n = 0;
    for (std::size_t l = 1; l < sizes.size(); ++l) n += sizes[l] * sizes[l - 1] + sizes[l];
    return n;
}

Mlp Mlp::zeros(std::vector<std::size_t> sizes) {
    Mlp net;
    net.sizes = std::move(sizes);
    net.params.assign(net.param_count(), 0.0);
    return net;
}

Mlp Mlp::he_init(std::vector<std::size_t> sizes, datagen::Rng& rng) {
    Mlp net = zeros(std::move(sizes));
    std::size_t off = 0;
    for (std::size_t l = 1; l < net.sizes.size(); ++l) {
        std::size_t in = net.sizes[l - 1], out = net.sizes[l];
        double scale = std::sqrt(2.0 / static_cast<double>(in));
        for (std::size_t i = 0; i < out * in; ++i) net.params[off + i] = rng.normal(0.0, scale);
        off += out * in + out;  // biases stay zero
    }
    return net;
}

std::vector<double> Mlp::forward(const std::vector<double>& x) const {
    if (x.size() != sizes.front())
        throw std::invalid_argument("Mlp::forward: input size mismatch");
    std::vector<double> a = x, next;
    std::size_t off = 0;
    for (std::size_t l = 1; l < sizes.size(); ++l) {
        std::size_t in = sizes[l - 1], out = sizes[l];
        next.assign(out, 0.0);
        for (std::size_t i = 0; i < out; ++i) {
            double s = params[off + out * in + i];  // bias
            const double* w = &params[off + i * in];
            for (std::size_t j = 0; j < in; ++j) s += w[j] * a[j];
            next[i] = (l + 1 < sizes.size() && s < 0.0) ? 0.0 : s;  // ReLU on hidden
        }
        a.swap(next);
        off += out * in + out;
    }
    return a;
}

double nn_loss_and_gradient(const Mlp& net, ModelSpec::Head head,
                            const std::vector<std::vector<double>>& X,
                            const std::vector<std::vector<double>>& Y,
                            std::vector<double>* grad) {
    const auto& sizes = net.sizes;
    std::size_t layers = sizes.size() - 1;
    if (grad) grad->assign(net.params.size(), 0.0);

    // per-layer activations for one sample
    std::vector<std::vector<double>> act(sizes.size());
    std::vector<std::vector<double>> delta(sizes.size());
    double total = 0.0;

    for (std::size_t s = 0; s < X.size(); ++s) {
        act[0] = X[s];
        std::size_t off = 0;
        for (std::size_t l = 1; l <= layers; ++l) {
            std::size_t in = sizes[l - 1], out = sizes[l];
            act[l].assign(out, 0.0);
            for (std::size_t i = 0; i < out; ++i) {
                double v = net.params[off + out * in + i];
                const double* w = &net.params[off + i * in];
                for (std::size_t j = 0; j < in; ++j) v += w[j] * act[l - 1][j];
                act[l][i] = (l < layers && v < 0.0) ? 0.0 : v;
            }
            off += out * in + out;
        }

        const auto& raw = act[layers];
        const auto& y = Y[s];
        auto& draw = delta[layers];
        draw.assign(raw.size(), 0.0);

        if (head == ModelSpec::Head::Mse) {
            double inv = 1.0 / static_cast<double>(y.size());
            double loss = 0.0;
            for (std::size_t o = 0; o < y.size(); ++o) {
                double d = raw[o] - y[o];
                loss += d * d * inv;
                draw[o] = 2.0 * d * inv;
            }
            total += loss;
        } else {
            double loss = 0.0;
            for (std::size_t o = 0; o < y.size(); ++o) {
                double mu = raw[3 * o];
                double s_raw = raw[3 * o + 1], n_raw = raw[3 * o + 2];
                double sigma = softplus(s_raw) + kSigmaFloor;
                double nu = 2.0 + softplus(n_raw);
                loss += student_t_nll(mu, sigma, nu, y[o]);
                double z = (y[o] - mu) / sigma;
                double q = 1.0 + z * z / nu;
                double dmu = -(nu + 1.0) * z / (sigma * nu * q);
                double dsigma = 1.0 / sigma - (nu + 1.0) * z * z / (sigma * nu * q);
                double dnu = -0.5 * digamma(0.5 * (nu + 1.0)) + 0.5 * digamma(0.5 * nu) +
                             0.5 / nu + 0.5 * std::log(q) -
                             0.5 * (nu + 1.0) * z * z / (q * nu * nu);
                draw[3 * o] = dmu;
                draw[3 * o + 1] = dsigma * sigmoid(s_raw);
                draw[3 * o + 2] = dnu * sigmoid(n_raw);
            }
            total += loss;
        }

        if (!grad) continue;
        // backward pass
        for (std::size_t l = layers; l >= 1; --l) {
            std::size_t in = sizes[l - 1], out = sizes[l];
            std::size_t layer_off = 0;
            for (std::size_t k = 1; k < l; ++k)
                layer_off += sizes[k] * sizes[k - 1] + sizes[k];
            auto& d = delta[l];
            if (l < layers)
                for (std::size_t i = 0; i < out; ++i)
                    if (act[l][i] == 0.0) d[i] = 0.0;  // ReLU gate
            double* gw = &(*grad)[layer_off];
            double* gb = &(*grad)[layer_off + out * in];
            for (std::size_t i = 0; i < out; ++i) {
                gb[i] += d[i];
                for (std::size_t j = 0; j < in; ++j) gw[i * in + j] += d[i] * act[l - 1][j];
            }
            if (l > 1) {
                delta[l - 1].assign(in, 0.0);
                for (std::size_t i = 0; i < out; ++i) {
                    const double* w = &net.params[layer_off + i * in];
                    for (std::size_t j = 0; j < in; ++j) delta[l - 1][j] += w[j] * d[i];
                }
            }
        }
    }

    double inv_n = 1.0 / static_cast<double>(X.size());
    if (grad)
        for (double& g : *grad) g *= inv_n;
    return total * inv_n;
}

NnModel NnModel::fit(const WindowedDataset& ds, const ModelSpec& spec) {
    if (ds.size() == 0) throw std::invalid_argument("NnModel: empty dataset");
    NnModel m;
    m.head = spec.head;
    m.w_out = ds.w_out;
    m.x_mean = ds.x_mean;
    m.x_std = ds.x_std;

    // standardize targets per output column
    m.y_mean.assign(ds.w_out, 0.0);
    m.y_std.assign(ds.w_out, 1.0);
    double n = static_cast<double>(ds.size());
    for (const auto& row : ds.Y)
        for (std::size_t o = 0; o < ds.w_out; ++o) m.y_mean[o] += row[o];
    for (double& v : m.y_mean) v /= n;
    std::vector<double> var(ds.w_out, 0.0);
    for (const auto& row : ds.Y)
        for (std::size_t o = 0; o < ds.w_out; ++o) {
            double d = row[o] - m.y_mean[o];
            var[o] += d * d;
        }
    for (std::size_t o = 0; o < ds.w_out; ++o) {
        double sd = std::sqrt(var[o] / n);
        m.y_std[o] = sd > 0.0 ? sd : 1.0;
    }

    std::vector<std::vector<double>> xn(ds.size()), yn(ds.size());
    for (std::size_t i = 0; i < ds.size(); ++i) {
        xn[i] = ds.normalize(ds.X[i]);
        yn[i].resize(ds.w_out);
        for (std::size_t o = 0; o < ds.w_out; ++o)
            yn[i][o] = (ds.Y[i][o] - m.y_mean[o]) / m.y_std[o];
    }

    std::vector<std::size_t> sizes{ds.w_in};
    for (std::size_t h : spec.hidden) sizes.push_back(h);
    sizes.push_back(spec.head == ModelSpec::Head::StudentT ? 3 * ds.w_out : ds.w_out);

    datagen::Rng rng(datagen::seed_for(spec.seed, 0x6e6e));
    m.net = Mlp::he_init(sizes, rng);

    constexpr double kBeta1 = 0.9, kBeta2 = 0.999, kEps = 1e-8;
    std::vector<double> adam_m(m.net.params.size(), 0.0), adam_v(m.net.params.size(), 0.0);
    std::vector<double> grad;
    std::vector<std::size_t> order(ds.size());
    std::iota(order.begin(), order.end(), 0);
    std::size_t step = 0;

    for (std::size_t epoch = 0; epoch < spec.epochs; ++epoch) {
        for (std::size_t i = order.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(rng.below(i));
            std::swap(order[i - 1], order[j]);
        }
        for (std::size_t start = 0; start < order.size(); start += spec.batch_size) {
            std::size_t end = std::min(order.size(), start + spec.batch_size);
            std::vector<std::vector<double>> bx, by;
            bx.reserve(end - start);
            by.reserve(end - start);
            for (std::size_t i = start; i < end; ++i) {
                bx.push_back(xn[order[i]]);
                by.push_back(yn[order[i]]);
            }
            double loss = nn_loss_and_gradient(m.net, spec.head, bx, by, &grad);
            if (!std::isfinite(loss))
                throw NonFiniteLoss("training diverged at epoch " + std::to_string(epoch) +
                                    ", batch starting at " + std::to_string(start));
            ++step;
            double bc1 = 1.0 - std::pow(kBeta1, static_cast<double>(step));
            double bc2 = 1.0 - std::pow(kBeta2, static_cast<double>(step));
            for (std::size_t p = 0; p < grad.size(); ++p) {
                adam_m[p] = kBeta1 * adam_m[p] + (1.0 - kBeta1) * grad[p];
                adam_v[p] = kBeta2 * adam_v[p] + (1.0 - kBeta2) * grad[p] * grad[p];
                m.net.params[p] -= spec.learning_rate * (adam_m[p] / bc1) /
                                   (std::sqrt(adam_v[p] / bc2) + kEps);
            }
        }
    }
    return m;
}

std::vector<double> NnModel::raw_outputs(const std::vector<double>& x) const {
    std::vector<double> xn(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) xn[j] = (x[j] - x_mean[j]) / x_std[j];
    return net.forward(xn);
}

std::vector<double> NnModel::predict(const std::vector<double>& x) const {
    auto raw = raw_outputs(x);
    std::vector<double> out(w_out);
    for (std::size_t o = 0; o < w_out; ++o) {
        double v = head == ModelSpec::Head::StudentT ? raw[3 * o] : raw[o];
        out[o] = v * y_std[o] + y_mean[o];
    }
    return out;
}

ForecastDistribution NnModel::predict_distribution(const std::vector<double>& x) const {
    if (head != ModelSpec::Head::StudentT)
        throw std::logic_error("NnModel: distribution output requires the Student's-t head");
    auto raw = raw_outputs(x);
    ForecastDistribution d;
    d.steps.resize(w_out);
    for (std::size_t o = 0; o < w_out; ++o) {
        d.steps[o].mu = raw[3 * o] * y_std[o] + y_mean[o];
        d.steps[o].sigma = (softplus(raw[3 * o + 1]) + kSigmaFloor) * y_std[o];
        d.steps[o].nu = 2.0 + softplus(raw[3 * o + 2]);
    }
    return d;
}

nlohmann::json NnModel::to_json() const {
    return {{"family", "nn"},
            {"head", head == ModelSpec::Head::StudentT ? "student_t" : "mse"},
            {"sizes", net.sizes},
            {"params", net.params},
            {"w_out", w_out},
            {"x_mean", x_mean},
            {"x_std", x_std},
            {"y_mean", y_mean},
            {"y_std", y_std}};
}

NnModel NnModel::from_json(const nlohmann::json& j) {
    NnModel m;
    m.head = j.at("head").get<std::string>() == "student_t" ? ModelSpec::Head::StudentT
                                                            : ModelSpec::Head::Mse;
    m.net.sizes = j.at("sizes").get<std::vector<std::size_t>>();
    m.net.params = j.at("params").get<std::vector<double>>();
    m.w_out = j.at("w_out").get<std::size_t>();
    m.x_mean = j.at("x_mean").get<std::vector<double>>();
    m.x_std = j.at("x_std").get<std::vector<double>>();
    m.y_mean = j.at("y_mean").get<std::vector<double>>();
    m.y_std = j.at("y_std").get<std::vector<double>>();
    return m;
}

}  // namespace simgen::ml
