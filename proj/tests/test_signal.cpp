#include <doctest.h>

#include <cmath>
#include <random>

#include "fcae/signal.hpp"

using namespace fcae::signal;

namespace {

Signal make_signal(std::initializer_list<double> values) {
    Signal s;
    s.samples.resize(static_cast<Eigen::Index>(values.size()));
    Eigen::Index i = 0;
    for (double v : values) s.samples[i++] = v;
    return s;
}

Signal random_signal(int n, unsigned seed, double scale = 1.0) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> dist(0.0, scale);
    Signal s;
    s.samples.resize(n);
    for (int i = 0; i < n; ++i) s.samples[i] = dist(rng);
    return s;
}

}  // namespace

TEST_CASE("add_gaussian_noise: sigma 0 is the identity") {
    const Signal x = random_signal(100, 1);
    const Signal y = add_gaussian_noise(x, 0.0, 5);
    CHECK((x.samples - y.samples).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("add_gaussian_noise: sample std near sigma at large N") {
    const Signal x = random_signal(100000, 2, 10.0);
    const Signal y = add_gaussian_noise(x, 15.0, 6);
    const Eigen::VectorXd diff = y.samples - x.samples;
    const double mean = diff.mean();
    const double stddev = std::sqrt((diff.array() - mean).square().sum() / (diff.size() - 1));
    CHECK(stddev > 14.8);
    CHECK(stddev < 15.2);
}

TEST_CASE("add_gaussian_noise: deterministic per seed") {
    const Signal x = random_signal(64, 3);
    const Signal a = add_gaussian_noise(x, 2.0, 77);
    const Signal b = add_gaussian_noise(x, 2.0, 77);
    const Signal c = add_gaussian_noise(x, 2.0, 78);
    CHECK((a.samples - b.samples).cwiseAbs().maxCoeff() == 0.0);
    CHECK((a.samples - c.samples).cwiseAbs().maxCoeff() > 0.0);
}

TEST_CASE("fragment: counts and remainder policy") {
    Signal x;
    x.samples = Eigen::VectorXd::LinSpaced(2500, 0, 2499);
    CHECK(fragment(x, 250).size() == 10);

    Signal y;
    y.samples = Eigen::VectorXd::Zero(249);
    CHECK(fragment(y, 250).empty());

    Signal z;
    z.samples = Eigen::VectorXd::LinSpaced(500, 0, 499);
    const auto frags = fragment(z, 250);
    REQUIRE(frags.size() == 2);
    CHECK(frags[0][0] == 0.0);
    CHECK(frags[0][249] == 249.0);
    CHECK(frags[1][0] == 250.0);
    CHECK(frags[1][249] == 499.0);
}

TEST_CASE("reassemble: round trip and error cases") {
    const Signal x = random_signal(2500, 4);
    const Signal back = reassemble(fragment(x, 250));
    CHECK((back.samples - x.samples).cwiseAbs().maxCoeff() == 0.0);

    const auto one = fragment(random_signal(250, 5), 250);
    CHECK(reassemble(one).samples.size() == 250);

    std::vector<Eigen::VectorXd> ragged{Eigen::VectorXd::Zero(3), Eigen::VectorXd::Zero(4)};
    CHECK_THROWS_AS(reassemble(ragged), std::invalid_argument);

    std::vector<Eigen::VectorXd> two{Eigen::VectorXd::Constant(2, 1.0),
                                     Eigen::VectorXd::Constant(2, 2.0)};
    const Signal cat = reassemble(two);
    CHECK(cat.samples[0] == 1.0);
    CHECK(cat.samples[3] == 2.0);
}

TEST_CASE("minmax: bounds, inversion, no clipping") {
    Eigen::MatrixXd data(2, 3);
    data << -2, 0, 1, 2, 3, -1;
    const NormState state = fit_minmax(data);
    CHECK(state.min_val == -2);
    CHECK(state.max_val == 3);
    const Eigen::MatrixXd scaled = apply_minmax(data, state);
    CHECK(scaled.minCoeff() == 0.0);
    CHECK(scaled.maxCoeff() == 1.0);
    CHECK((invert_minmax(scaled, state) - data).cwiseAbs().maxCoeff() < 1e-12);

    // out-of-range values pass through unclipped
    Eigen::MatrixXd outside(1, 1);
    outside << 5.0;
    CHECK(apply_minmax(outside, state)(0, 0) > 1.0);

    CHECK_THROWS_AS(fit_minmax(Eigen::MatrixXd::Constant(2, 2, 3.0)), std::invalid_argument);
}

TEST_CASE("minmax per feature: column-wise round trip") {
    Eigen::MatrixXd data(3, 2);
    data << 0, 10, 1, 20, 2, 30;
    const PerFeatureNormState state = fit_minmax_per_feature(data);
    const Eigen::MatrixXd scaled = apply_minmax(data, state);
    CHECK(scaled.col(0).minCoeff() == 0.0);
    CHECK(scaled.col(0).maxCoeff() == 1.0);
    CHECK(scaled.col(1).minCoeff() == 0.0);
    CHECK((invert_minmax(scaled, state) - data).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("snr/prd: identical signals hit the sentinels") {
    const Signal x = random_signal(50, 6);
    CHECK(std::isinf(snr(x, x)));
    CHECK(prd(x, x) == 0.0);
}

TEST_CASE("snr/prd: reference value pairs through the dB identity") {
    // engineer an error with exactly the target energy ratio
    const auto pair_for_snr = [](double snr_db) {
        Signal x = random_signal(1000, 7);
        Signal e = random_signal(1000, 8);
        const double target_err = x.samples.squaredNorm() * std::pow(10.0, -snr_db / 10.0);
        e.samples *= std::sqrt(target_err / e.samples.squaredNorm());
        Signal x_hat;
        x_hat.samples = x.samples - e.samples;
        return std::make_pair(x, x_hat);
    };
    {
        const auto [x, x_hat] = pair_for_snr(3.75);
        CHECK(snr(x, x_hat) == doctest::Approx(3.75).epsilon(1e-9));
        CHECK(std::abs(prd(x, x_hat) - 64.93) < 0.02);
    }
    {
        const auto [x, x_hat] = pair_for_snr(9.00);
        CHECK(snr(x, x_hat) == doctest::Approx(9.00).epsilon(1e-9));
        CHECK(std::abs(prd(x, x_hat) - 35.47) < 0.02);
    }
}

TEST_CASE("snr/prd: error cases") {
    const Signal x = random_signal(10, 9);
    const Signal y = random_signal(11, 10);
    CHECK_THROWS_AS(snr(x, y), std::invalid_argument);
    Signal zero;
    zero.samples = Eigen::VectorXd::Zero(10);
    CHECK_THROWS_AS(snr(zero, x), std::invalid_argument);
}

TEST_CASE("prd = 100 * 10^(-snr/20) for random pairs") {
    for (unsigned seed = 0; seed < 20; ++seed) {
        const Signal x = random_signal(200, 100 + seed);
        const Signal x_hat = add_gaussian_noise(x, 0.3, seed);
        const double s = snr(x, x_hat);
        const double p = prd(x, x_hat);
        CHECK(std::abs(p - 100.0 * std::pow(10.0, -s / 20.0)) / p < 1e-9);
    }
}

TEST_CASE("snr of a noisy signal concentrates at the energy-ratio prediction") {
    const int n = 100000;
    const double sigma = 2.0;
    const Signal x = random_signal(n, 11, 5.0);
    const Signal y = add_gaussian_noise(x, sigma, 12);
    const double predicted = 10.0 * std::log10(x.samples.squaredNorm() / (n * sigma * sigma));
    CHECK(std::abs(snr(x, y) - predicted) < 0.3);
}

TEST_CASE("metrics bundles both values") {
    const Signal x = random_signal(64, 13);
    const Signal y = add_gaussian_noise(x, 0.5, 14);
    const MetricReport r = metrics(x, y);
    CHECK(r.snr_db == snr(x, y));
    CHECK(r.prd_pct == prd(x, y));
}
