#pragma once

#include <Eigen/Dense>

namespace summa::detail {

struct LsqResult {
  Eigen::VectorXd beta;
  Eigen::VectorXd residual;
  double rms = 0.0;
};

// Ordinary least squares with column equilibration.
inline LsqResult least_squares(const Eigen::MatrixXd& X, const Eigen::VectorXd& y) {
  Eigen::VectorXd scale(X.cols());
  for (Eigen::Index c = 0; c < X.cols(); ++c) {
    double m = X.col(c).cwiseAbs().maxCoeff();
    scale(c) = m > 0.0 ? m : 1.0;
  }
  Eigen::MatrixXd Xs = X * scale.cwiseInverse().asDiagonal();
  Eigen::VectorXd b = Xs.colPivHouseholderQr().solve(y);
  LsqResult out;
  out.beta = b.cwiseQuotient(scale);
  out.residual = y - X * out.beta;
  out.rms = std::sqrt(out.residual.squaredNorm() / static_cast<double>(y.size()));
  return out;
}

}  // namespace summa::detail
