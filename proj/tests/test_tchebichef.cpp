#include <doctest.h>

#include <cmath>
#include <random>

#include "fcae/tchebichef.hpp"

using fcae::tchebichef::Basis;
using fcae::tchebichef::build_basis;
using fcae::tchebichef::cached_basis;
using fcae::tchebichef::forward_moments;
using fcae::tchebichef::inverse_moments;
using fcae::tchebichef::MomentVector;

namespace {

double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

Eigen::VectorXd random_signal(int n, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Eigen::VectorXd x(n);
    for (int i = 0; i < n; ++i) x[i] = dist(rng);
    return x;
}

}  // namespace

TEST_CASE("build_basis: N=4 p=1 is the constant row") {
    const Basis b = build_basis(4, 1);
    REQUIRE(b.q.rows() == 1);
    REQUIRE(b.q.cols() == 4);
    for (int x = 0; x < 4; ++x) CHECK(b.q(0, x) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("build_basis: N=4 row 1 matches the closed form") {
    const Basis b = build_basis(4, 2);
    const double expected[4] = {-0.6708, -0.2236, 0.2236, 0.6708};
    for (int x = 0; x < 4; ++x) CHECK(std::abs(b.q(1, x) - expected[x]) < 1e-4);
}

TEST_CASE("build_basis: orthonormality at N in {2, 16, 250}") {
    for (int n : {2, 16, 250}) {
        const Basis b = build_basis(n, n);
        const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(n, n);
        CHECK(max_abs(b.q * b.q.transpose() - eye) < 1e-9);
        CHECK(max_abs(b.q.transpose() * b.q - eye) < 1e-9);
    }
}

TEST_CASE("build_basis: rows satisfy the three-term order recurrence") {
    const int n = 16;
    const Basis b = build_basis(n, n);
    for (int m = 2; m < n; ++m) {
        const double md = m;
        const double a1 = (1.0 / md) * std::sqrt((4 * md * md - 1) / (n * n - md * md));
        const double a2 = ((1.0 - md) / md) * std::sqrt((2 * md + 1) / (2 * md - 3)) *
                          std::sqrt((n * n - (md - 1) * (md - 1)) / (n * n - md * md));
        for (int x = 0; x < n; ++x) {
            const double rec = a1 * (2 * x + 1 - n) * b.q(m - 1, x) + a2 * b.q(m - 2, x);
            CHECK(std::abs(rec - b.q(m, x)) < 1e-12);
        }
    }
}

TEST_CASE("build_basis: argument validation") {
    CHECK_THROWS_AS(build_basis(4, 5), std::invalid_argument);
    CHECK_THROWS_AS(build_basis(4, 0), std::invalid_argument);
    CHECK_THROWS_AS(build_basis(1, 1), std::invalid_argument);
}

TEST_CASE("cached_basis returns a stable reference") {
    const Basis& a = cached_basis(16, 8);
    const Basis& b = cached_basis(16, 8);
    CHECK(&a == &b);
    CHECK(a.order_p == 8);
}

TEST_CASE("forward_moments: constant signal hits only coefficient 0") {
    const int n = 10;
    const Basis b = build_basis(n, 5);
    const double c = 2.5;
    const Eigen::VectorXd x = Eigen::VectorXd::Constant(n, c);
    const auto m = forward_moments(x, b);
    CHECK(m.coeffs[0] == doctest::Approx(c * std::sqrt(double(n))).epsilon(1e-12));
    for (int i = 1; i < 5; ++i) CHECK(std::abs(m.coeffs[i]) < 1e-9);
}

TEST_CASE("forward_moments: a basis row maps to a unit vector") {
    const Basis b = build_basis(12, 6);
    const int k = 3;
    const Eigen::VectorXd row_k = b.q.row(k).transpose();
    const auto m = forward_moments(row_k, b);
    for (int i = 0; i < 6; ++i) {
        CHECK(std::abs(m.coeffs[i] - (i == k ? 1.0 : 0.0)) < 1e-9);
    }
}

TEST_CASE("forward_moments: Parseval at full order") {
    const int n = 64;
    const Basis b = build_basis(n, n);
    const Eigen::VectorXd x = random_signal(n, 7);
    const auto m = forward_moments(x, b);
    const double sig = x.squaredNorm();
    const double mom = m.coeffs.squaredNorm();
    CHECK(std::abs(sig - mom) / sig < 1e-8);
}

TEST_CASE("forward_moments: length mismatch throws") {
    const Basis b = build_basis(8, 4);
    const Eigen::VectorXd short_signal = Eigen::VectorXd::Zero(7);
    CHECK_THROWS_AS(forward_moments(short_signal, b), std::invalid_argument);
}

TEST_CASE("forward_moments is linear") {
    const int n = 32;
    const Basis b = build_basis(n, n);
    const Eigen::VectorXd x = random_signal(n, 11);
    const Eigen::VectorXd y = random_signal(n, 13);
    const double a = 1.7, c = -0.3;
    const Eigen::VectorXd lhs = forward_moments((a * x + c * y).eval(), b).coeffs;
    const Eigen::VectorXd rhs =
        a * forward_moments(x, b).coeffs + c * forward_moments(y, b).coeffs;
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("inverse_moments: round trip identity at p = N") {
    const int n = 50;
    const Basis b = build_basis(n, n);
    for (unsigned seed = 0; seed < 100; ++seed) {
        const Eigen::VectorXd x = random_signal(n, seed);
        const Eigen::VectorXd back = inverse_moments(forward_moments(x, b), b);
        CHECK((x - back).cwiseAbs().maxCoeff() < 1e-8);
    }
}

TEST_CASE("inverse_moments: zero moments give the zero signal") {
    const Basis b = build_basis(8, 4);
    const Eigen::VectorXd out = inverse_moments(MomentVector{Eigen::VectorXd::Zero(4), 8}, b);
    CHECK(out.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("inverse_moments: dimension mismatch throws") {
    const Basis b = build_basis(8, 4);
    CHECK_THROWS_AS(inverse_moments(MomentVector{Eigen::VectorXd::Zero(5), 8}, b),
                    std::invalid_argument);
}

TEST_CASE("truncated reconstruction error equals dropped coefficient energy") {
    const int n = 40, p = 25;
    const Basis full = build_basis(n, n);
    const Basis trunc = build_basis(n, p);
    const Eigen::VectorXd x = random_signal(n, 21);
    const Eigen::VectorXd recon = inverse_moments(forward_moments(x, trunc), trunc);
    const double err_energy = (x - recon).squaredNorm();
    // independent oracle: explicit residual over the dropped coefficients
    const Eigen::VectorXd all = forward_moments(x, full).coeffs;
    const double dropped = all.tail(n - p).squaredNorm();
    CHECK(std::abs(err_energy - dropped) < 1e-8);
}
