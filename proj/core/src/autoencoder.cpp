#include "fcae/autoencoder.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "fcae/fractional.hpp"
#include "fcae/rsvd.hpp"
#include "fcae/seeding.hpp"

namespace fcae::autoencoder {

namespace {

std::array<std::pair<int, int>, kNumLayers> layer_shapes(const LayerSpec& s) {
    return {{{s.n_h, s.n_in}, {s.n_e, s.n_h}, {s.n_h, s.n_e}, {s.n_in, s.n_h}}};
}

Eigen::MatrixXd sigmoid(const Eigen::MatrixXd& z) {
    return 1.0 / (1.0 + (-z.array()).exp());
}

void check_shapes(const NetworkParams& params, const Eigen::MatrixXd& input) {
    if (input.cols() != params.w[0].cols()) {
        throw std::invalid_argument("autoencoder: input width " + std::to_string(input.cols()) +
                                    " != layer 1 fan-in " + std::to_string(params.w[0].cols()));
    }
    for (int l = 1; l < kNumLayers; ++l) {
        if (params.w[l].cols() != params.w[l - 1].rows()) {
            throw std::invalid_argument("autoencoder: inconsistent layer shapes at layer " +
                                        std::to_string(l + 1));
        }
    }
}

constexpr std::uint64_t kShuffleTag = 0x5348554646ULL;     // shuffle stream
constexpr std::uint64_t kRecompressTag = 0x52535644ULL;    // in-training RSVD

}  // namespace

void LayerSpec::validate() const {
    if (!(n_e >= 1 && n_e < n_h && n_h < n_in)) {
        throw std::invalid_argument("autoencoder: layer sizes must satisfy 1 <= N_e < N_h < N, got " +
                                    std::to_string(n_e) + ", " + std::to_string(n_h) + ", " +
                                    std::to_string(n_in));
    }
}

NetworkParams init_params(const LayerSpec& spec, std::uint64_t seed) {
    spec.validate();
    NetworkParams params;
    std::mt19937_64 rng(seeding::derive(seed, 0x494e4954ULL));
    for (int l = 0; l < kNumLayers; ++l) {
        const auto [rows, cols] = layer_shapes(spec)[l];
        const double limit = std::sqrt(6.0 / (rows + cols));
        std::uniform_real_distribution<double> dist(-limit, limit);
        params.w[l].resize(rows, cols);
        for (int i = 0; i < rows; ++i) {
            for (int j = 0; j < cols; ++j) {
                params.w[l](i, j) = dist(rng);
            }
        }
        params.b[l] = Eigen::VectorXd::Zero(rows);
    }
    return params;
}

ForwardCache forward(const NetworkParams& params, const Eigen::MatrixXd& input) {
    check_shapes(params, input);
    ForwardCache cache;
    cache.a[0] = input;
    for (int l = 0; l < kNumLayers; ++l) {
        cache.z[l] = (cache.a[l] * params.w[l].transpose()).rowwise() +
                     params.b[l].transpose();
        cache.a[l + 1] = (l == kNumLayers - 1) ? sigmoid(cache.z[l]) : cache.z[l];
    }
    return cache;
}

double cost(const Eigen::MatrixXd& pred, const Eigen::MatrixXd& target,
            const NetworkParams& params, double lambda) {
    if (pred.rows() != target.rows() || pred.cols() != target.cols()) {
        throw std::invalid_argument("autoencoder: cost shape mismatch");
    }
    const double m = static_cast<double>(pred.rows());
    double j = (pred - target).squaredNorm() / (2.0 * m);
    if (lambda != 0.0) {
        double reg = 0.0;
        for (const auto& w : params.w) reg += w.squaredNorm();
        j += 0.5 * lambda * reg;
    }
    return j;
}

Gradients fractional_backward(const NetworkParams& params, const ForwardCache& cache,
                              const Eigen::MatrixXd& target, double alpha,
                              double lambda, double eps) {
    const Eigen::MatrixXd& out = cache.a[kNumLayers];
    if (out.rows() != target.rows() || out.cols() != target.cols()) {
        throw std::invalid_argument("autoencoder: target shape mismatch");
    }
    const fractional::Order order(alpha);
    const double batch = static_cast<double>(out.rows());

    Gradients grads;
    // sigma'(z) from the cached activation
    Eigen::MatrixXd dz =
        ((out - target).array() * out.array() * (1.0 - out.array())).matrix();
    for (int l = kNumLayers - 1; l >= 0; --l) {
        const Eigen::MatrixXd dw_int = dz.transpose() * cache.a[l] / batch;
        grads.dw[l] = dw_int.binaryExpr(params.w[l], [&](double g, double w) {
            return g * fractional::caputo_weight_factor(w, order, eps) +
                   fractional::caputo_reg_term(w, order, lambda, eps);
        });
        grads.db[l] = dz.colwise().mean();
        if (l > 0) {
            dz = dz * params.w[l];  // hidden layers are linear, g' = 1
        }
    }
    return grads;
}

void sgd_step(NetworkParams& params, const Gradients& grads, double eta) {
    for (int l = 0; l < kNumLayers; ++l) {
        if (grads.dw[l].rows() != params.w[l].rows() || grads.dw[l].cols() != params.w[l].cols()) {
            throw std::invalid_argument("autoencoder: gradient shape mismatch");
        }
        params.w[l] -= eta * grads.dw[l];
        params.b[l] -= eta * grads.db[l];
    }
}

NetworkParams train(const Eigen::MatrixXd& noisy, const Eigen::MatrixXd& clean,
                    const TrainingConfig& config, const EpochCallback& on_epoch) {
    if (noisy.rows() != clean.rows() || noisy.cols() != clean.cols()) {
        throw std::invalid_argument("autoencoder: dataset/target shape mismatch");
    }
    if (noisy.rows() == 0) {
        throw std::invalid_argument("autoencoder: empty training set");
    }
    if (config.batch_size < 1 || config.epochs < 1 || !(config.eta > 0.0)) {
        throw std::invalid_argument("autoencoder: invalid training config");
    }

    NetworkParams params = init_params(config.layer_spec, config.seed);
    // Data order comes from its own stream so it never perturbs the init draws.
    std::mt19937_64 shuffle_rng(seeding::derive(config.seed, kShuffleTag));

    const int n_rows = static_cast<int>(noisy.rows());
    std::vector<int> order(n_rows);
    std::iota(order.begin(), order.end(), 0);

    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        std::shuffle(order.begin(), order.end(), shuffle_rng);
        double epoch_loss = 0.0;
        int n_batches = 0;
        for (int start = 0; start < n_rows; start += config.batch_size) {
            const int count = std::min(config.batch_size, n_rows - start);
            Eigen::MatrixXd x(count, noisy.cols());
            Eigen::MatrixXd y(count, clean.cols());
            for (int i = 0; i < count; ++i) {
                x.row(i) = noisy.row(order[start + i]);
                y.row(i) = clean.row(order[start + i]);
            }
            const ForwardCache cache = forward(params, x);
            epoch_loss += cost(cache.a[kNumLayers], y, params, config.lambda);
            ++n_batches;
            const Gradients grads = fractional_backward(params, cache, y, config.alpha,
                                                        config.lambda, config.eps_clamp);
            sgd_step(params, grads, config.eta);
        }
        epoch_loss /= n_batches;
        if (!std::isfinite(epoch_loss)) {
            throw std::runtime_error("autoencoder: training diverged at epoch " +
                                     std::to_string(epoch + 1));
        }
        if (config.recompress_every > 0 && (epoch + 1) % config.recompress_every == 0) {
            for (int l = 0; l < kNumLayers; ++l) {
                const std::uint64_t seed = seeding::derive(
                    config.seed, kRecompressTag, static_cast<std::uint64_t>(epoch) * 16 + l);
                params.w[l] = rsvd::compress_opt(params.w[l], config.rsvd_iters, seed,
                                                 config.energy_fraction);
            }
        }
        if (on_epoch) on_epoch(epoch + 1, epoch_loss);
    }
    return params;
}

}  // namespace fcae::autoencoder
