#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <utility>

namespace fcae::rsvd {

/// Rank-r factorization A ~ U * diag(S) * V^T.
/// U, V have orthonormal columns; S is non-negative and descending.
struct SvdTriple {
    Eigen::MatrixXd u;
    Eigen::VectorXd s;
    Eigen::MatrixXd v;
};

/// Randomized SVD: Gaussian sketch of r + subspace_iters columns, QR-based
/// subspace iteration, exact SVD of the condensed matrix, truncated to r.
/// Requires r >= 1, subspace_iters >= 1 and r + subspace_iters < rows(A).
SvdTriple rsvd(const Eigen::MatrixXd& a, int rank, int subspace_iters, std::uint64_t seed);

/// Exact truncated SVD (used as the small-matrix fallback).
SvdTriple exact_svd(const Eigen::MatrixXd& a, int rank);

/// Smallest r whose cumulative singular-value sum reaches fraction of the total.
int check_optimized_rank(const Eigen::VectorXd& s, double fraction);

/// (E, F_s): cumulative singular-value share at rank r, and r / len(S).
std::pair<double, double> energy_fraction(const Eigen::VectorXd& s, int rank);

/// Optimized-rank compression: near-full-rank decomposition, then truncation
/// at the smallest rank covering `fraction` of the singular-value energy.
/// Returns a dense matrix of the original shape.
Eigen::MatrixXd compress_opt(const Eigen::MatrixXd& w, int subspace_iters,
                             std::uint64_t seed, double fraction = 0.9);

/// Fixed-ratio compression: retained rank r = max(1, floor((1-ratio) * min(n,m))).
Eigen::MatrixXd compress_at_ratio(const Eigen::MatrixXd& w, double ratio,
                                  int subspace_iters, std::uint64_t seed);

}  // namespace fcae::rsvd
