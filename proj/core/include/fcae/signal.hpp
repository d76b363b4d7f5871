#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

namespace fcae::signal {

struct Signal {
    Eigen::VectorXd samples;
    double sample_rate_hz = 250.0;
};

/// Global min-max bounds; requires max_val > min_val.
struct NormState {
    double min_val = 0.0;
    double max_val = 1.0;
};

struct MetricReport {
    double snr_db = 0.0;
    double prd_pct = 0.0;
};

/// y(n) = x(n) + zeta(n), zeta ~ N(0, sigma^2); deterministic per seed.
Signal add_gaussian_noise(const Signal& x, double sigma, std::uint64_t seed);

/// Non-overlapping windows of frag_len; trailing remainder dropped.
std::vector<Eigen::VectorXd> fragment(const Signal& x, int frag_len);

/// Concatenates equally sized fragments back into one signal.
Signal reassemble(const std::vector<Eigen::VectorXd>& fragments);

NormState fit_minmax(const Eigen::MatrixXd& data);
Eigen::MatrixXd apply_minmax(const Eigen::MatrixXd& data, const NormState& state);
Eigen::MatrixXd invert_minmax(const Eigen::MatrixXd& data, const NormState& state);

/// Per-column variant (behind the pipeline's per_feature_norm switch).
struct PerFeatureNormState {
    Eigen::VectorXd min_vals;
    Eigen::VectorXd max_vals;
};
PerFeatureNormState fit_minmax_per_feature(const Eigen::MatrixXd& data);
Eigen::MatrixXd apply_minmax(const Eigen::MatrixXd& data, const PerFeatureNormState& state);
Eigen::MatrixXd invert_minmax(const Eigen::MatrixXd& data, const PerFeatureNormState& state);

/// SNR = 10 log10(sum x^2 / sum (x - x_hat)^2); +inf when x_hat == x.
double snr(const Signal& x, const Signal& x_hat);
/// PRD = 100 sqrt(sum (x - x_hat)^2 / sum x^2); 0 when x_hat == x.
double prd(const Signal& x, const Signal& x_hat);
MetricReport metrics(const Signal& x, const Signal& x_hat);

}  // namespace fcae::signal
