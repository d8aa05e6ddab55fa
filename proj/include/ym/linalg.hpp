#pragma once

#include <Eigen/Dense>

#include "ym/errors.hpp"

namespace ym {

// Numerical rank via singular values with cutoff tau * max(s_max, 1); the
// floor pins zero maps that consist of rounding dust. When guard is true, a
// singular value within a factor of 10 of the cutoff on either side raises
// RankAmbiguityError instead of silently rounding.
int numerical_rank(const Eigen::VectorXd& singular_values,
                   double tau = tol::rank, bool guard = false);

// Orthonormal basis of the kernel of a (columns of the returned matrix).
// The basis is the set of trailing right singular vectors; for an exactly
// zero map this is the canonical coordinate basis.
Eigen::MatrixXd kernel_basis(const Eigen::MatrixXd& a, double tau = tol::rank,
                             bool guard = false);

// Orthonormal basis of the column space of a.
Eigen::MatrixXd image_basis(const Eigen::MatrixXd& a, double tau = tol::rank,
                            bool guard = false);

// Orthonormal basis of the part of span(cols) orthogonal to span(excluded).
// Both inputs must have orthonormal columns.
Eigen::MatrixXd orthogonal_complement_within(const Eigen::MatrixXd& cols,
                                             const Eigen::MatrixXd& excluded,
                                             double tau = tol::rank);

// Minimum-norm least-squares solution of a x = b.
Eigen::VectorXd min_norm_solve(const Eigen::MatrixXd& a,
                               const Eigen::VectorXd& b);

// Slope of the least-squares line through (log x_i, log y_i).
double loglog_slope(const Eigen::VectorXd& x, const Eigen::VectorXd& y);

}  // namespace ym
