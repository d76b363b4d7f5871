#include "fcae/signal.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

namespace fcae::signal {

Signal add_gaussian_noise(const Signal& x, double sigma, std::uint64_t seed) {
    if (sigma < 0.0) throw std::invalid_argument("signal: sigma must be >= 0");
    Signal y = x;
    if (sigma == 0.0) return y;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, sigma);
    for (Eigen::Index i = 0; i < y.samples.size(); ++i) {
        y.samples[i] += gauss(rng);
    }
    return y;
}

std::vector<Eigen::VectorXd> fragment(const Signal& x, int frag_len) {
    if (frag_len < 1) throw std::invalid_argument("signal: frag_len must be >= 1");
    const Eigen::Index count = x.samples.size() / frag_len;
    std::vector<Eigen::VectorXd> fragments;
    fragments.reserve(static_cast<std::size_t>(count));
    for (Eigen::Index i = 0; i < count; ++i) {
        fragments.push_back(x.samples.segment(i * frag_len, frag_len));
    }
    return fragments;
}

Signal reassemble(const std::vector<Eigen::VectorXd>& fragments) {
    Eigen::Index total = 0;
    for (const auto& f : fragments) {
        if (!fragments.empty() && f.size() != fragments.front().size()) {
            throw std::invalid_argument("signal: ragged fragments");
        }
        total += f.size();
    }
    Signal out;
    out.samples.resize(total);
    Eigen::Index at = 0;
    for (const auto& f : fragments) {
        out.samples.segment(at, f.size()) = f;
        at += f.size();
    }
    return out;
}

NormState fit_minmax(const Eigen::MatrixXd& data) {
    if (data.size() == 0) throw std::invalid_argument("signal: cannot fit on empty data");
    NormState state{data.minCoeff(), data.maxCoeff()};
    if (!(state.max_val > state.min_val)) {
        throw std::invalid_argument("signal: degenerate range, max == min");
    }
    return state;
}

Eigen::MatrixXd apply_minmax(const Eigen::MatrixXd& data, const NormState& state) {
    return (data.array() - state.min_val) / (state.max_val - state.min_val);
}

Eigen::MatrixXd invert_minmax(const Eigen::MatrixXd& data, const NormState& state) {
    return data.array() * (state.max_val - state.min_val) + state.min_val;
}

PerFeatureNormState fit_minmax_per_feature(const Eigen::MatrixXd& data) {
    if (data.size() == 0) throw std::invalid_argument("signal: cannot fit on empty data");
    PerFeatureNormState state{data.colwise().minCoeff(), data.colwise().maxCoeff()};
    for (Eigen::Index j = 0; j < data.cols(); ++j) {
        if (!(state.max_vals[j] > state.min_vals[j])) {
            throw std::invalid_argument("signal: degenerate range in column " + std::to_string(j));
        }
    }
    return state;
}

Eigen::MatrixXd apply_minmax(const Eigen::MatrixXd& data, const PerFeatureNormState& state) {
    return (data.rowwise() - state.min_vals.transpose()).array().rowwise() /
           (state.max_vals - state.min_vals).transpose().array();
}

Eigen::MatrixXd invert_minmax(const Eigen::MatrixXd& data, const PerFeatureNormState& state) {
    return (data.array().rowwise() * (state.max_vals - state.min_vals).transpose().array())
               .matrix()
               .rowwise() +
           state.min_vals.transpose();
}

namespace {

std::pair<double, double> error_energies(const Signal& x, const Signal& x_hat) {
    if (x.samples.size() != x_hat.samples.size()) {
        throw std::invalid_argument("signal: length mismatch, " +
                                    std::to_string(x.samples.size()) + " vs " +
                                    std::to_string(x_hat.samples.size()));
    }
    const double ref = x.samples.squaredNorm();
    if (ref == 0.0) throw std::invalid_argument("signal: reference signal is all zero");
    const double err = (x.samples - x_hat.samples).squaredNorm();
    return {ref, err};
}

}  // namespace

double snr(const Signal& x, const Signal& x_hat) {
    const auto [ref, err] = error_energies(x, x_hat);
    if (err == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(ref / err);
}

double prd(const Signal& x, const Signal& x_hat) {
    const auto [ref, err] = error_energies(x, x_hat);
    return 100.0 * std::sqrt(err / ref);
}

MetricReport metrics(const Signal& x, const Signal& x_hat) {
    return MetricReport{snr(x, x_hat), prd(x, x_hat)};
}

}  // namespace fcae::signal
