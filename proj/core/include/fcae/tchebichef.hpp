#pragma once

#include <Eigen/Dense>

namespace fcae::tchebichef {

/// Orthonormal Tchebichef polynomial basis of order p over {0..N-1}.
/// q is p x N; row m holds t_m(0), ..., t_m(N-1). Rows are orthonormal
/// under the counting measure; at p = N the matrix is orthogonal.
struct Basis {
    int length_n = 0;
    int order_p = 0;
    Eigen::MatrixXd q;
};

struct MomentVector {
    Eigen::VectorXd coeffs;
    int basis_length = 0;
};

/// Builds the basis. Throws std::invalid_argument when length_n < 2 or
/// order_p is outside [1, length_n].
Basis build_basis(int length_n, int order_p);

/// Process-wide memoized basis lookup, safe for concurrent use.
const Basis& cached_basis(int length_n, int order_p);

MomentVector forward_moments(const Eigen::VectorXd& signal, const Basis& basis);
Eigen::VectorXd inverse_moments(const MomentVector& moments, const Basis& basis);

// Batched forms; one fragment per row.
Eigen::MatrixXd forward_moments(const Eigen::MatrixXd& fragments, const Basis& basis);
Eigen::MatrixXd inverse_moments(const Eigen::MatrixXd& moments, const Basis& basis);

}  // namespace fcae::tchebichef
