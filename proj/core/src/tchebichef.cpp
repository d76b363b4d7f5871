#include "fcae/tchebichef.hpp"

#include <Eigen/Eigenvalues>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>

namespace fcae::tchebichef {

namespace {

// The orthonormal Tchebichef polynomials are the orthonormal polynomials of
// the uniform counting measure on {0..N-1}. The matrix [t_m(x)] is therefore
// the (sign-fixed) eigenvector matrix of the symmetric tridiagonal Jacobi
// matrix with diagonal (N-1)/2 and off-diagonal sqrt(n^2(N^2-n^2)/(4(4n^2-1))),
// whose eigenvalues are exactly 0..N-1. The naive three-term recurrence in
// the order index loses orthonormality catastrophically past N ~ 64, so the
// eigendecomposition route is used instead; it keeps ||QQ^T - I|| at machine
// precision for all N of interest.
Eigen::MatrixXd full_basis(int n) {
    Eigen::VectorXd diag = Eigen::VectorXd::Constant(n, (n - 1) / 2.0);
    Eigen::VectorXd subdiag(n - 1);
    for (int k = 1; k < n; ++k) {
        const double kk = static_cast<double>(k);
        subdiag[k - 1] = std::sqrt(kk * kk * (static_cast<double>(n) * n - kk * kk) /
                                   (4.0 * (4.0 * kk * kk - 1.0)));
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, subdiag);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("tchebichef: tridiagonal eigensolve failed");
    }
    // Eigenvalues come back ascending = 0..N-1, so column x of the eigenvector
    // matrix is (t_0(x), ..., t_{N-1}(x)) up to sign; row 0 must be 1/sqrt(N) > 0.
    Eigen::MatrixXd q = solver.eigenvectors();
    for (int x = 0; x < n; ++x) {
        if (q(0, x) < 0.0) q.col(x) = -q.col(x);
    }
    return q;
}

}  // namespace

Basis build_basis(int length_n, int order_p) {
    if (length_n < 2) {
        throw std::invalid_argument("tchebichef: length_n must be >= 2, got " +
                                    std::to_string(length_n));
    }
    if (order_p < 1 || order_p > length_n) {
        throw std::invalid_argument("tchebichef: order_p must be in [1, length_n], got " +
                                    std::to_string(order_p));
    }
    Basis basis;
    basis.length_n = length_n;
    basis.order_p = order_p;
    basis.q = full_basis(length_n).topRows(order_p);
    return basis;
}

const Basis& cached_basis(int length_n, int order_p) {
    static std::mutex mutex;
    static std::map<std::pair<int, int>, Basis> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto key = std::make_pair(length_n, order_p);
    auto it = cache.find(key);
    if (it == cache.end()) {
        it = cache.emplace(key, build_basis(length_n, order_p)).first;
    }
    return it->second;
}

MomentVector forward_moments(const Eigen::VectorXd& signal, const Basis& basis) {
    if (signal.size() != basis.length_n) {
        throw std::invalid_argument("tchebichef: signal length " + std::to_string(signal.size()) +
                                    " != basis length " + std::to_string(basis.length_n));
    }
    return MomentVector{basis.q * signal, basis.length_n};
}

Eigen::VectorXd inverse_moments(const MomentVector& moments, const Basis& basis) {
    if (moments.coeffs.size() != basis.order_p) {
        throw std::invalid_argument("tchebichef: moment count " +
                                    std::to_string(moments.coeffs.size()) + " != basis order " +
                                    std::to_string(basis.order_p));
    }
    return basis.q.transpose() * moments.coeffs;
}

Eigen::MatrixXd forward_moments(const Eigen::MatrixXd& fragments, const Basis& basis) {
    if (fragments.cols() != basis.length_n) {
        throw std::invalid_argument("tchebichef: fragment width != basis length");
    }
    return fragments * basis.q.transpose();
}

Eigen::MatrixXd inverse_moments(const Eigen::MatrixXd& moments, const Basis& basis) {
    if (moments.cols() != basis.order_p) {
        throw std::invalid_argument("tchebichef: moment width != basis order");
    }
    return moments * basis.q;
}

}  // namespace fcae::tchebichef
