#include "simgen/ml/linear.hpp"

#include "simgen/util/linalg.hpp"

namespace simgen::ml {

LinearModel LinearModel::fit(const WindowedDataset& ds, double lambda) {
    if (ds.size() == 0) throw std::invalid_argument("LinearModel: empty dataset");
    std::size_t p = ds.w_in + 1;  // features + intercept (last slot)
    std::size_t q = ds.w_out;

    std::vector<double> gram(p * p, 0.0), xty(p * q, 0.0);
    auto feat = [&](const std::vector<double>& x, std::size_t j) {
        return j < ds.w_in ? x[j] : 1.0;
    };
    for (std::size_t r = 0; r < ds.size(); ++r) {
        for (std::size_t i = 0; i < p; ++i) {
            double fi = feat(ds.X[r], i);
            for (std::size_t j = i; j < p; ++j) gram[i * p + j] += fi * feat(ds.X[r], j);
            for (std::size_t o = 0; o < q; ++o) xty[i * q + o] += fi * ds.Y[r][o];
        }
    }
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < i; ++j) gram[i * p + j] = gram[j * p + i];
    for (std::size_t i = 0; i + 1 < p; ++i) gram[i * p + i] += lambda;

    try {
        util::solve_linear(gram, xty, p, q);
    } catch (const util::SingularMatrix&) {
        throw DegenerateDesign("LinearModel: normal equations are singular beyond the ridge");
    }

    LinearModel m;
    m.coefficients.resize(ds.w_in, std::vector<double>(q));
    m.intercept.resize(q);
    for (std::size_t j = 0; j < ds.w_in; ++j)
        for (std::size_t o = 0; o < q; ++o) m.coefficients[j][o] = xty[j * q + o];
    for (std::size_t o = 0; o < q; ++o) m.intercept[o] = xty[ds.w_in * q + o];
    return m;
}

std::vector<double> LinearModel::predict(const std::vector<double>& x) const {
    if (x.size() != coefficients.size())
        throw std::invalid_argument("LinearModel::predict: feature count mismatch");
    std::vector<double> out = intercept;
    for (std::size_t j = 0; j < x.size(); ++j)
        for (std::size_t o = 0; o < out.size(); ++o) out[o] += coefficients[j][o] * x[j];
    return out;
}

nlohmann::json LinearModel::to_json() const {
    return {{"family", "linear"}, {"coefficients", coefficients}, {"intercept", intercept}};
}

LinearModel LinearModel::from_json(const nlohmann::json& j) {
    LinearModel m;
    m.coefficients = j.at("coefficients").get<std::vector<std::vector<double>>>();
    m.intercept = j.at("intercept").get<std::vector<double>>();
    return m;
}

}  // namespace simgen::ml
