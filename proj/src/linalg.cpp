#include "ym/linalg.hpp"

#include <cmath>
#include <string>

namespace ym {

int numerical_rank(const Eigen::VectorXd& sv, double tau, bool guard) {
  if (sv.size() == 0) return 0;
  const double smax = sv.maxCoeff();
  if (smax <= 0.0) return 0;
  // All rank decisions act on operators assembled from orthogonal adjoints
  // and orthonormal bases, whose natural scale is 1; flooring the reference
  // scale keeps pure rounding dust (e.g. Ad(I) - I) at rank zero.
  const double cut = tau * std::max(smax, 1.0);
  if (guard) {
    for (int i = 0; i < sv.size(); ++i) {
      const double s = sv[i];
      if (s > cut / 10.0 && s < cut * 10.0) {
        throw RankAmbiguityError(
            "singular value " + std::to_string(s) +
            " lies within a factor of 10 of the rank cutoff " +
            std::to_string(cut));
      }
    }
  }
  int r = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv[i] > cut) ++r;
  return r;
}

Eigen::MatrixXd kernel_basis(const Eigen::MatrixXd& a, double tau, bool guard) {
  const int n = static_cast<int>(a.cols());
  if (a.size() == 0 || a.norm() == 0.0)
    return Eigen::MatrixXd::Identity(n, n);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
  const int r = numerical_rank(svd.singularValues(), tau, guard);
  return svd.matrixV().rightCols(n - r);
}

Eigen::MatrixXd image_basis(const Eigen::MatrixXd& a, double tau, bool guard) {
  if (a.size() == 0 || a.norm() == 0.0)
    return Eigen::MatrixXd::Zero(a.rows(), 0);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullU);
  const int r = numerical_rank(svd.singularValues(), tau, guard);
  return svd.matrixU().leftCols(r);
}

Eigen::MatrixXd orthogonal_complement_within(const Eigen::MatrixXd& cols,
                                             const Eigen::MatrixXd& excluded,
                                             double tau) {
  if (cols.cols() == 0) return cols;
  Eigen::MatrixXd residue = cols;
  if (excluded.cols() > 0)
    residue -= excluded * (excluded.transpose() * cols);
  if (residue.norm() == 0.0) return Eigen::MatrixXd::Zero(cols.rows(), 0);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(residue, Eigen::ComputeThinU);
  const int r = numerical_rank(svd.singularValues(), tau, false);
  return svd.matrixU().leftCols(r);
}

Eigen::VectorXd min_norm_solve(const Eigen::MatrixXd& a,
                               const Eigen::VectorXd& b) {
  return a.completeOrthogonalDecomposition().solve(b);
}

double loglog_slope(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  const int n = static_cast<int>(x.size());
  Eigen::MatrixXd m(n, 2);
  Eigen::VectorXd rhs(n);
  for (int i = 0; i < n; ++i) {
    m(i, 0) = std::log(x[i]);
    m(i, 1) = 1.0;
    rhs[i] = std::log(std::max(y[i], 1e-300));
  }
  Eigen::Vector2d fit = m.colPivHouseholderQr().solve(rhs);
  return fit[0];
}

}  // namespace ym
