#pragma once

#include <Eigen/Dense>
#include <vector>

namespace defgpa {

using Index = Eigen::Index;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Prescribed eigenvalues of the reference shape covariance S*S^T,
/// stored in non-ascending order.
class CovariancePrior {
 public:
  CovariancePrior() = default;
  /// Throws DegenerateInput unless the values are finite, non-negative and
  /// non-ascending.
  explicit CovariancePrior(Vector lambdas);

  const Vector& lambdas() const noexcept { return lambdas_; }
  Index dim() const noexcept { return lambdas_.size(); }
  double trace() const { return lambdas_.sum(); }
  Matrix matrix() const { return lambdas_.asDiagonal(); }

 private:
  Vector lambdas_;
};

}  // namespace defgpa
