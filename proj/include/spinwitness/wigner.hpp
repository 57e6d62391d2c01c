// Squared rotation matrix elements |d^j_{m',m}(theta)|^2: the transition
// probabilities between J_z eigenstates under a precession by theta.
//
// Convention: the matrix is computed directly as |<m'| exp(-i theta J_x) |m>|^2
// from the eigendecomposition of J_x in the J_z basis. The textbook d-matrix
// is defined through exp(-i theta J_y); the two differ only by conjugation
// with a diagonal phase matrix, so the squared magnitudes coincide. Tests at
// j = 1/2 and j = 1 check this against the closed-form J_y expressions.
//
// J_x is real symmetric tridiagonal with <m+1|J_x|m> = sqrt(j(j+1)-m(m+1))/2
// and spectrum exactly {-j, ..., +j}. After the QL eigendecomposition the
// eigenvalues are snapped to that exact grid, which makes the probability
// matrix an exactly band-limited trigonometric polynomial in theta (integer
// frequencies |n| <= 2j) and exactly 2pi-periodic. Factorial products never
// appear, so there is no overflow ceiling near j ~ 85; the QL route is
// certified well past 2j = 400.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <string>

#include "spinwitness/spin.hpp"

namespace spinwitness {

namespace detail {

// Eigenvectors of J_x in the J_z basis. Column k pairs with the exact
// eigenvalue mu_k = k - j, k = 0..2j.
struct JxEigensystem {
    Spin spin;
    Eigen::MatrixXd vectors;

    double eigenvalue(int k) const { return 0.5 * (2 * k - spin.twice_j()); }
};

inline JxEigensystem jx_eigensystem(Spin spin) {
    const int n = spin.dimension();
    const double j = spin.value();

    Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd sub(n - 1 > 0 ? n - 1 : 1);
    for (int k = 0; k + 1 < n; ++k) {
        const double m = outcome_at(spin, k).value();
        sub(k) = 0.5 * std::sqrt(j * (j + 1.0) - m * (m + 1.0));
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub.head(n - 1 > 0 ? n - 1 : 0),
                                  Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("jx_eigensystem: eigensolver failed at twice_j=" +
                                 std::to_string(spin.twice_j()));
    return JxEigensystem{spin, solver.eigenvectors()};
}

inline void clamp_probabilities(Eigen::MatrixXd& p) {
    for (int c = 0; c < p.cols(); ++c)
        for (int r = 0; r < p.rows(); ++r) {
            double& x = p(r, c);
            if (x < 0.0) x = 0.0;
            if (x > 1.0) x = 1.0;
        }
}

inline void check_row_sums(const Eigen::MatrixXd& p, double tol, const char* who) {
    for (int r = 0; r < p.rows(); ++r) {
        const double dev = std::abs(p.row(r).sum() - 1.0);
        if (dev > tol)
            throw std::runtime_error(std::string(who) + ": row " + std::to_string(r) +
                                     " sum deviates from 1 by " + std::to_string(dev));
    }
}

}  // namespace detail

struct DMatrixSq {
    Spin spin;
    double theta = 0.0;
    // p(row m', col m) = |<m'|U(theta)|m>|^2, rows/cols in ascending m order
    Eigen::MatrixXd p;
};

// Full probability matrix from a precomputed eigensystem. Callers that need
// many angles for one spin should hold the eigensystem and use this overload;
// the eigendecomposition dominates the cost at large j.
inline DMatrixSq d_matrix_sq(const detail::JxEigensystem& eig, double theta) {
    if (!std::isfinite(theta))
        throw std::invalid_argument("d_matrix_sq: theta must be finite");

    const int n = eig.spin.dimension();
    Eigen::VectorXd c(n), s(n);
    for (int k = 0; k < n; ++k) {
        const double arg = theta * eig.eigenvalue(k);
        c(k) = std::cos(arg);
        s(k) = std::sin(arg);
    }

    // U = V diag(exp(-i theta mu)) V^T, assembled from two real products
    const Eigen::MatrixXd& v = eig.vectors;
    const Eigen::MatrixXd re = (v * c.asDiagonal()) * v.transpose();
    const Eigen::MatrixXd im = (v * s.asDiagonal()) * v.transpose();
    Eigen::MatrixXd p = re.cwiseAbs2() + im.cwiseAbs2();

    detail::check_row_sums(p, 1e-8, "d_matrix_sq");
    detail::clamp_probabilities(p);
    return DMatrixSq{eig.spin, theta, std::move(p)};
}

inline DMatrixSq d_matrix_sq(Spin spin, double theta) {
    return d_matrix_sq(detail::jx_eigensystem(spin), theta);
}

// Largest twice_j certified by the test suite; constant by construction.
inline Spin max_stable_spin() { return Spin(512); }

}  // namespace spinwitness
