#pragma once

#include "simgen/datagen/rng.hpp"
#include "simgen/ml/model.hpp"

namespace simgen::ml {

struct NonFiniteLoss : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Fully connected net with ReLU hidden activations and a linear raw output
/// layer. Parameters are a single flat vector, per layer: weight matrix
/// (row-major, out x in) followed by biases.
struct Mlp {
    std::vector<std::size_t> sizes;  // input, hidden..., raw output
    std::vector<double> params;

    static Mlp zeros(std::vector<std::size_t> sizes);
    static Mlp he_init(std::vector<std::size_t> sizes, datagen::Rng& rng);

    std::size_t param_count() const;
    std::vector<double> forward(const std::vector<double>& x) const;
};

/// Raw head outputs for input x (before any head link functions).
inline std::vector<double> nn_forward(const Mlp& net, const std::vector<double>& x) {
    return net.forward(x);
}

/// Mean per-sample training loss over the batch; if grad is non-null it
/// receives dLoss/dparams. MSE head: mean squared error over outputs.
/// Student's-t head: NLL summed over horizon steps, with links
/// mu = raw, sigma = softplus(raw) + 1e-6, nu = 2 + softplus(raw).
double nn_loss_and_gradient(const Mlp& net, ModelSpec::Head head,
                            const std::vector<std::vector<double>>& X,
                            const std::vector<std::vector<double>>& Y,
                            std::vector<double>* grad);

class NnModel final : public Model {
public:
    /// Adam (beta1 = 0.9, beta2 = 0.999) on seeded mini-batches. Inputs are
    /// z-scored with the dataset stats; targets are standardized internally
    /// and predictions mapped back.
    static NnModel fit(const WindowedDataset& ds, const ModelSpec& spec);

    std::vector<double> predict(const std::vector<double>& x) const override;
    bool probabilistic() const override { return head == ModelSpec::Head::StudentT; }
    ForecastDistribution predict_distribution(const std::vector<double>& x) const override;
    nlohmann::json to_json() const override;
    static NnModel from_json(const nlohmann::json& j);

    Mlp net;
    ModelSpec::Head head = ModelSpec::Head::Mse;
    std::size_t w_out = 0;
    std::vector<double> x_mean, x_std;
    std::vector<double> y_mean, y_std;

private:
    std::vector<double> raw_outputs(const std::vector<double>& x) const;
};

}  // namespace simgen::ml
