#include <doctest.h>

#include <Eigen/SVD>
#include <cmath>
#include <random>

#include "fcae/rsvd.hpp"

using fcae::rsvd::check_optimized_rank;
using fcae::rsvd::compress_at_ratio;
using fcae::rsvd::compress_opt;
using fcae::rsvd::energy_fraction;
using fcae::rsvd::exact_svd;
using fcae::rsvd::rsvd;
using fcae::rsvd::SvdTriple;

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

double ortho_error(const Eigen::MatrixXd& u) {
    return (u.transpose() * u - Eigen::MatrixXd::Identity(u.cols(), u.cols()))
        .cwiseAbs()
        .maxCoeff();
}

Eigen::MatrixXd reconstruct(const SvdTriple& t) {
    return t.u * t.s.asDiagonal() * t.v.transpose();
}

}  // namespace

TEST_CASE("rsvd: exact rank-1 recovery") {
    const int n = 30, m = 20;
    Eigen::VectorXd u = random_matrix(n, 1, 1);
    Eigen::VectorXd v = random_matrix(m, 1, 2);
    u.normalize();
    v.normalize();
    const Eigen::MatrixXd a = 3.0 * u * v.transpose();
    const SvdTriple t = rsvd(a, 1, 5, 42);
    CHECK(std::abs(t.s[0] - 3.0) < 1e-8);
    CHECK((reconstruct(t) - a).norm() < 1e-8);
}

TEST_CASE("rsvd: embedded diagonal spectrum") {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(8, 6);
    for (int i = 0; i < 5; ++i) a(i, i) = 5 - i;
    const SvdTriple t = rsvd(a, 3, 2, 7);
    const Eigen::VectorXd expected = exact_svd(a, 3).s;  // oracle on the same matrix
    for (int i = 0; i < 3; ++i) {
        CHECK(std::abs(t.s[i] - expected[i]) < 1e-6);
        CHECK(std::abs(t.s[i] - (5 - i)) < 1e-6);
    }
}

TEST_CASE("rsvd: near-optimal low-rank reconstruction on random matrices") {
    const Eigen::MatrixXd a = random_matrix(100, 80, 3);
    const int r = 10;
    const SvdTriple t = rsvd(a, r, 5, 99);
    const double err = (a - reconstruct(t)).norm();
    // oracle: exact truncated SVD error
    Eigen::BDCSVD<Eigen::MatrixXd> svd(a);
    const double best = std::sqrt(svd.singularValues().tail(svd.singularValues().size() - r)
                                      .squaredNorm());
    CHECK(err <= 1.05 * best);
}

TEST_CASE("rsvd: exact reconstruction when true rank <= r") {
    const Eigen::MatrixXd low =
        random_matrix(40, 4, 5) * random_matrix(4, 30, 6);  // rank 4
    const SvdTriple t = rsvd(low, 6, 3, 11);
    CHECK((reconstruct(t) - low).norm() < 1e-8);
}

TEST_CASE("rsvd: deterministic for a fixed seed") {
    const Eigen::MatrixXd a = random_matrix(50, 40, 8);
    const SvdTriple t1 = rsvd(a, 5, 3, 1234);
    const SvdTriple t2 = rsvd(a, 5, 3, 1234);
    CHECK((t1.u - t2.u).norm() == 0.0);
    CHECK((t1.s - t2.s).norm() == 0.0);
    CHECK((t1.v - t2.v).norm() == 0.0);
}

TEST_CASE("rsvd: factor orthonormality and descending spectrum") {
    const Eigen::MatrixXd a = random_matrix(60, 45, 9);
    const SvdTriple t = rsvd(a, 8, 4, 77);
    CHECK(ortho_error(t.u) < 1e-8);
    CHECK(ortho_error(t.v) < 1e-8);
    for (int i = 1; i < t.s.size(); ++i) {
        CHECK(t.s[i] <= t.s[i - 1]);
        CHECK(t.s[i] >= 0.0);
    }
}

TEST_CASE("rsvd: parameter validation") {
    const Eigen::MatrixXd a = random_matrix(10, 8, 10);
    CHECK_THROWS_AS(rsvd(a, 0, 2, 1), std::invalid_argument);
    CHECK_THROWS_AS(rsvd(a, 5, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(rsvd(a, 8, 2, 1), std::invalid_argument);  // r + p >= n
}

TEST_CASE("rsvd: all-zero matrix yields zero spectrum with orthonormal factors") {
    const Eigen::MatrixXd zero = Eigen::MatrixXd::Zero(12, 9);
    const SvdTriple t = rsvd(zero, 2, 3, 5);
    CHECK(t.s.cwiseAbs().maxCoeff() == 0.0);
    CHECK(ortho_error(t.u) < 1e-12);
    CHECK(ortho_error(t.v) < 1e-12);
}

TEST_CASE("check_optimized_rank: hand-computed examples") {
    Eigen::VectorXd s1(3);
    s1 << 10, 0, 0;
    CHECK(check_optimized_rank(s1, 0.9) == 1);
    Eigen::VectorXd s2(4);
    s2 << 4, 3, 2, 1;
    CHECK(check_optimized_rank(s2, 0.9) == 3);
    Eigen::VectorXd s3 = Eigen::VectorXd::Ones(5);
    CHECK(check_optimized_rank(s3, 0.9) == 5);
    CHECK(check_optimized_rank(Eigen::VectorXd::Zero(4), 0.9) == 1);
}

TEST_CASE("check_optimized_rank matches a brute-force scan on random spectra") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        const int len = 1 + static_cast<int>(rng() % 30);
        Eigen::VectorXd s(len);
        for (int i = 0; i < len; ++i) s[i] = dist(rng);
        std::sort(s.data(), s.data() + len, std::greater<double>());
        const double fraction = 0.05 + 0.95 * dist(rng);
        const double total = s.sum();
        int expected = len;
        double cum = 0.0;
        for (int r = 1; r <= len; ++r) {
            cum += s[r - 1];
            if (cum >= fraction * total - 1e-12 * total) {
                expected = r;
                break;
            }
        }
        CHECK(check_optimized_rank(s, fraction) == expected);
    }
}

TEST_CASE("energy_fraction: hand-computed examples and range checks") {
    Eigen::VectorXd s(4);
    s << 4, 3, 2, 1;
    const auto [e2, f2] = energy_fraction(s, 2);
    CHECK(e2 == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(f2 == doctest::Approx(0.5).epsilon(1e-12));
    const auto [e4, f4] = energy_fraction(s, 4);
    CHECK(e4 == 1.0);
    CHECK(f4 == 1.0);
    CHECK_THROWS_AS(energy_fraction(s, 0), std::invalid_argument);
    CHECK_THROWS_AS(energy_fraction(s, 5), std::invalid_argument);
}

TEST_CASE("compress_opt: no energy discarded on an exactly low-rank matrix") {
    Eigen::MatrixXd w =
        5.0 * random_matrix(20, 1, 31) * random_matrix(1, 15, 32) +
        5.0 * random_matrix(20, 1, 33) * random_matrix(1, 15, 34);
    const Eigen::MatrixXd wc = compress_opt(w, 5, 1);
    CHECK((w - wc).norm() < 1e-6);
}

TEST_CASE("compress_opt: zero in, zero out") {
    const Eigen::MatrixXd zero = Eigen::MatrixXd::Zero(10, 7);
    CHECK(compress_opt(zero, 5, 1).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("compress_opt: energy bookkeeping on a random 150x250 matrix") {
    const Eigen::MatrixXd w = random_matrix(150, 250, 40);
    const Eigen::MatrixXd wc = compress_opt(w, 5, 2);
    // retained rank must cover >= 0.9 of the singular-value energy
    Eigen::BDCSVD<Eigen::MatrixXd> svd(w);
    const Eigen::VectorXd s = svd.singularValues();
    Eigen::BDCSVD<Eigen::MatrixXd> svdc(wc);
    int rank_c = 0;
    for (int i = 0; i < svdc.singularValues().size(); ++i) {
        if (svdc.singularValues()[i] > 1e-8 * svdc.singularValues()[0]) ++rank_c;
    }
    const auto [e, fs] = energy_fraction(s.head(145), rank_c);
    CHECK(e >= 0.9);
    // sum-based energy rule bounds the squared relative error by 1 - 0.9
    CHECK((w - wc).squaredNorm() / w.squaredNorm() <= 1.0 - 0.9 + 0.05);
}

TEST_CASE("compress_at_ratio: ratio 0 on a full-rank square matrix is lossless") {
    const Eigen::MatrixXd w = random_matrix(30, 30, 50);
    const Eigen::MatrixXd wc = compress_at_ratio(w, 0.0, 5, 3);
    CHECK((w - wc).norm() / w.norm() < 1e-6);
}

TEST_CASE("compress_at_ratio: retained-rank arithmetic") {
    const Eigen::MatrixXd w = random_matrix(100, 100, 51);
    Eigen::BDCSVD<Eigen::MatrixXd> svd(compress_at_ratio(w, 0.5, 5, 4));
    int rank = 0;
    for (int i = 0; i < svd.singularValues().size(); ++i) {
        if (svd.singularValues()[i] > 1e-8 * svd.singularValues()[0]) ++rank;
    }
    CHECK(rank == 50);

    const Eigen::MatrixXd w2 = random_matrix(150, 75, 52);
    Eigen::BDCSVD<Eigen::MatrixXd> svd2(compress_at_ratio(w2, 0.95, 5, 5));
    int rank2 = 0;
    for (int i = 0; i < svd2.singularValues().size(); ++i) {
        if (svd2.singularValues()[i] > 1e-8 * svd2.singularValues()[0]) ++rank2;
    }
    CHECK(rank2 == 3);  // max(1, floor(0.05 * 75))
}

TEST_CASE("compress_at_ratio: error non-decreasing in the ratio") {
    const Eigen::MatrixXd w = random_matrix(80, 60, 53);
    double prev = -1.0;
    for (double ratio : {0.0, 0.25, 0.5, 0.75, 0.9}) {
        const double err = (w - compress_at_ratio(w, ratio, 5, 6)).norm();
        CHECK(err + 1e-9 >= prev);
        prev = err;
    }
}

TEST_CASE("compress_at_ratio: rejects ratios outside [0, 1)") {
    const Eigen::MatrixXd w = random_matrix(10, 10, 54);
    CHECK_THROWS_AS(compress_at_ratio(w, 1.0, 5, 1), std::invalid_argument);
    CHECK_THROWS_AS(compress_at_ratio(w, -0.1, 5, 1), std::invalid_argument);
}
