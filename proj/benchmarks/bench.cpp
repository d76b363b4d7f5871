#include <benchmark/benchmark.h>

#include <random>

#include "fcae/autoencoder.hpp"
#include "fcae/rsvd.hpp"
#include "fcae/tchebichef.hpp"

namespace {

Eigen::MatrixXd random_matrix(int n, int m, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> dist(0.0, 1.0);
    Eigen::MatrixXd a(n, m);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < m; ++j) a(i, j) = dist(rng);
    }
    return a;
}

void bm_tchebichef_basis(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(fcae::tchebichef::build_basis(n, n));
    }
}
BENCHMARK(bm_tchebichef_basis)->Arg(64)->Arg(250);

void bm_forward_moments(benchmark::State& state) {
    const auto& basis = fcae::tchebichef::cached_basis(250, 250);
    const Eigen::MatrixXd fragments = random_matrix(256, 250, 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(fcae::tchebichef::forward_moments(fragments, basis));
    }
}
BENCHMARK(bm_forward_moments);

void bm_rsvd(benchmark::State& state) {
    const Eigen::MatrixXd a = random_matrix(150, 250, 2);
    const int r = static_cast<int>(state.range(0));
    std::uint64_t seed = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(fcae::rsvd::rsvd(a, r, 5, seed++));
    }
}
BENCHMARK(bm_rsvd)->Arg(10)->Arg(50);

void bm_exact_svd(benchmark::State& state) {
    const Eigen::MatrixXd a = random_matrix(150, 250, 3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(fcae::rsvd::exact_svd(a, 10));
    }
}
BENCHMARK(bm_exact_svd);

void bm_forward_pass(benchmark::State& state) {
    const fcae::autoencoder::LayerSpec spec{250, 150, 75};
    const auto params = fcae::autoencoder::init_params(spec, 4);
    const Eigen::MatrixXd batch =
        (random_matrix(256, 250, 5).array() * 0.1 + 0.5).matrix();
    for (auto _ : state) {
        benchmark::DoNotOptimize(fcae::autoencoder::forward(params, batch));
    }
}
BENCHMARK(bm_forward_pass);

void bm_train_step(benchmark::State& state) {
    const double alpha = state.range(0) / 10.0;
    const fcae::autoencoder::LayerSpec spec{250, 150, 75};
    auto params = fcae::autoencoder::init_params(spec, 6);
    const Eigen::MatrixXd noisy =
        (random_matrix(256, 250, 7).array() * 0.1 + 0.5).matrix();
    const Eigen::MatrixXd clean =
        (random_matrix(256, 250, 8).array() * 0.1 + 0.5).matrix();
    for (auto _ : state) {
        const auto cache = fcae::autoencoder::forward(params, noisy);
        const auto grads = fcae::autoencoder::fractional_backward(
            params, cache, clean, alpha, 1e-6, 1e-8);
        fcae::autoencoder::sgd_step(params, grads, 0.01);
        benchmark::DoNotOptimize(params);
    }
}
BENCHMARK(bm_train_step)->Arg(10)->Arg(17);

}  // namespace

BENCHMARK_MAIN();
