#pragma once

#include "simgen/ml/model.hpp"

namespace simgen::ml {

struct DegenerateDesign : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Multi-output ridge regression (normal equations, intercept unpenalized).
class LinearModel final : public Model {
public:
    static LinearModel fit(const WindowedDataset& ds, double lambda = 1e-8);

    std::vector<double> predict(const std::vector<double>& x) const override;
    nlohmann::json to_json() const override;
    static LinearModel from_json(const nlohmann::json& j);

    // coefficients[j][o] for feature j, output o; intercept[o]
    std::vector<std::vector<double>> coefficients;
    std::vector<double> intercept;
};

}  // namespace simgen::ml
