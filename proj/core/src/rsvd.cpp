#include "fcae/rsvd.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace fcae::rsvd {

namespace {

// Thin Q factor of the Householder QR of m (cols(m) <= rows(m) assumed).
Eigen::MatrixXd thin_q(const Eigen::MatrixXd& m) {
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
    return qr.householderQ() * Eigen::MatrixXd::Identity(m.rows(), m.cols());
}

SvdTriple zero_triple(Eigen::Index n, Eigen::Index m, int rank) {
    SvdTriple t;
    t.u = Eigen::MatrixXd::Identity(n, rank);
    t.s = Eigen::VectorXd::Zero(rank);
    t.v = Eigen::MatrixXd::Identity(m, rank);
    return t;
}

Eigen::MatrixXd reconstruct(const SvdTriple& t, int rank) {
    return t.u.leftCols(rank) * t.s.head(rank).asDiagonal() * t.v.leftCols(rank).transpose();
}

// rsvd when the precondition holds, exact SVD otherwise (small matrices).
SvdTriple decompose(const Eigen::MatrixXd& a, int rank, int subspace_iters,
                    std::uint64_t seed) {
    if (rank + subspace_iters < a.rows()) {
        return rsvd(a, rank, subspace_iters, seed);
    }
    return exact_svd(a, rank);
}

}  // namespace

SvdTriple exact_svd(const Eigen::MatrixXd& a, int rank) {
    const int max_rank = static_cast<int>(std::min(a.rows(), a.cols()));
    if (rank < 1 || rank > max_rank) {
        throw std::invalid_argument("rsvd: exact_svd rank out of range");
    }
    if (a.norm() == 0.0) return zero_triple(a.rows(), a.cols(), rank);
    Eigen::BDCSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    SvdTriple t;
    t.u = svd.matrixU().leftCols(rank);
    t.s = svd.singularValues().head(rank);
    t.v = svd.matrixV().leftCols(rank);
    return t;
}

SvdTriple rsvd(const Eigen::MatrixXd& a, int rank, int subspace_iters, std::uint64_t seed) {
    const Eigen::Index n = a.rows();
    const Eigen::Index m = a.cols();
    if (rank < 1) throw std::invalid_argument("rsvd: rank must be >= 1");
    if (subspace_iters < 1) throw std::invalid_argument("rsvd: subspace_iters must be >= 1");
    if (rank + subspace_iters >= n) {
        throw std::invalid_argument("rsvd: requires rank + subspace_iters < rows, got " +
                                    std::to_string(rank + subspace_iters) + " vs " +
                                    std::to_string(n) + " rows");
    }
    if (a.norm() == 0.0) return zero_triple(n, m, rank);

    const Eigen::Index k = rank + subspace_iters;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXd sketch(m, k);
    for (Eigen::Index i = 0; i < m; ++i) {
        for (Eigen::Index j = 0; j < k; ++j) {
            sketch(i, j) = gauss(rng);
        }
    }

    Eigen::MatrixXd q = thin_q(a * sketch);  // n x k
    for (int i = 0; i < subspace_iters; ++i) {
        Eigen::MatrixXd g = thin_q(a.transpose() * q);  // m x k
        q = thin_q(a * g);
    }

    const Eigen::MatrixXd b = q.transpose() * a;  // k x m
    Eigen::BDCSVD<Eigen::MatrixXd> svd(b, Eigen::ComputeThinU | Eigen::ComputeThinV);

    SvdTriple t;
    t.u = (q * svd.matrixU()).leftCols(rank);
    t.s = svd.singularValues().head(rank);
    t.v = svd.matrixV().leftCols(rank);
    return t;
}

int check_optimized_rank(const Eigen::VectorXd& s, double fraction) {
    if (s.size() == 0) throw std::invalid_argument("rsvd: empty singular value vector");
    if (!(fraction > 0.0 && fraction <= 1.0)) {
        throw std::invalid_argument("rsvd: fraction must be in (0, 1]");
    }
    const double total = s.sum();
    if (total == 0.0) return 1;
    const double target = fraction * total - 1e-12 * total;
    double cum = 0.0;
    for (Eigen::Index i = 0; i < s.size(); ++i) {
        cum += s[i];
        if (cum >= target) return static_cast<int>(i) + 1;
    }
    return static_cast<int>(s.size());
}

std::pair<double, double> energy_fraction(const Eigen::VectorXd& s, int rank) {
    if (rank < 1 || rank > s.size()) {
        throw std::invalid_argument("rsvd: energy_fraction rank out of range");
    }
    const double total = s.sum();
    const double e = total == 0.0 ? 1.0 : s.head(rank).sum() / total;
    return {e, static_cast<double>(rank) / static_cast<double>(s.size())};
}

Eigen::MatrixXd compress_opt(const Eigen::MatrixXd& w, int subspace_iters,
                             std::uint64_t seed, double fraction) {
    if (w.size() == 0) throw std::invalid_argument("rsvd: empty matrix");
    const int min_dim = static_cast<int>(std::min(w.rows(), w.cols()));
    const int full_rank = std::max(1, min_dim - subspace_iters);
    const SvdTriple t = decompose(w, full_rank, subspace_iters, seed);
    const int opt = check_optimized_rank(t.s, fraction);
    return reconstruct(t, opt);
}

Eigen::MatrixXd compress_at_ratio(const Eigen::MatrixXd& w, double ratio,
                                  int subspace_iters, std::uint64_t seed) {
    if (w.size() == 0) throw std::invalid_argument("rsvd: empty matrix");
    if (!(ratio >= 0.0 && ratio < 1.0)) {
        throw std::invalid_argument("rsvd: compression ratio must be in [0, 1)");
    }
    const int min_dim = static_cast<int>(std::min(w.rows(), w.cols()));
    const int rank = std::max(1, static_cast<int>(std::floor((1.0 - ratio) * min_dim)));
    const SvdTriple t = decompose(w, rank, subspace_iters, seed);
    return reconstruct(t, rank);
}

}  // namespace fcae::rsvd
