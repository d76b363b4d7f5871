#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <functional>

namespace fcae::autoencoder {

inline constexpr int kNumLayers = 4;  // weighted layers of the 5-layer net

/// Layer widths: input/output N, outer hidden N_h, bottleneck N_e.
/// Requires n_e < n_h < n_in.
struct LayerSpec {
    int n_in = 250;
    int n_h = 150;
    int n_e = 75;
    void validate() const;
};

/// W[l] maps layer l activations from layer l-1: shapes
/// [n_h x n_in, n_e x n_h, n_h x n_e, n_in x n_h].
struct NetworkParams {
    std::array<Eigen::MatrixXd, kNumLayers> w;
    std::array<Eigen::VectorXd, kNumLayers> b;
};

/// Batch activations cached by forward(); a[0] is the input batch, rows are
/// samples. a[4] lies in (0, 1) (sigmoid output layer).
struct ForwardCache {
    std::array<Eigen::MatrixXd, kNumLayers> z;
    std::array<Eigen::MatrixXd, kNumLayers + 1> a;
};

struct Gradients {
    std::array<Eigen::MatrixXd, kNumLayers> dw;
    std::array<Eigen::VectorXd, kNumLayers> db;
};

struct TrainingConfig {
    double alpha = 1.0;          // fractional order, [1, 2)
    double eta = 0.01;           // learning rate
    double lambda = 1e-6;        // L2 regularization weight
    int epochs = 3000;
    int batch_size = 256;
    int recompress_every = 200;  // 0 disables in-training compression
    double energy_fraction = 0.9;
    double eps_clamp = 1e-8;
    int rsvd_iters = 5;
    std::uint64_t seed = 0;
    LayerSpec layer_spec{};
};

/// Glorot-uniform weights, zero biases; deterministic per (spec, seed).
NetworkParams init_params(const LayerSpec& spec, std::uint64_t seed);

/// Linear hidden layers, sigmoid output. input is batch x n_in.
ForwardCache forward(const NetworkParams& params, const Eigen::MatrixXd& input);

/// Regularized half-MSE cost: (1/2M) sum of squared errors + (lambda/2) sum ||W||_F^2.
double cost(const Eigen::MatrixXd& pred, const Eigen::MatrixXd& target,
            const NetworkParams& params, double lambda);

/// Fractional backward pass: integer-order batch-mean gradient scaled
/// elementwise by the Caputo weight factor, plus the fractional regularizer.
Gradients fractional_backward(const NetworkParams& params, const ForwardCache& cache,
                              const Eigen::MatrixXd& target, double alpha,
                              double lambda, double eps);

/// W <- W - eta * dW, B <- B - eta * dB.
void sgd_step(NetworkParams& params, const Gradients& grads, double eta);

using EpochCallback = std::function<void(int epoch, double loss)>;

/// Mini-batch fractional SGD over (noisy -> clean) normalized moment rows.
/// Deterministic per config.seed. Throws on NaN/Inf loss, naming the epoch.
NetworkParams train(const Eigen::MatrixXd& noisy, const Eigen::MatrixXd& clean,
                    const TrainingConfig& config, const EpochCallback& on_epoch = {});

}  // namespace fcae::autoencoder
