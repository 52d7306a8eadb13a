#pragma once

#include <utility>
#include <vector>

#include "defgpa/warps.hpp"

namespace defgpa {

/// phi(r): r^2 log(r^2) in 2D (0 at r = 0), -r in 3D.
double tps_kernel(double r, Index dim);

/// Thin-plate spline basis over l control centres. The weights W of a TPS
/// warp are the images of the centres (l x d); the spline coefficients are
/// recovery() * W.
class TpsModel final : public WarpBasis {
 public:
  /// DegenerateCenters when the centres are not in general position.
  TpsModel(Matrix centers, double lambda);

  Index dimension() const override { return centers_.rows(); }
  Index feature_dim() const override { return centers_.cols(); }
  Matrix features(const Matrix& points) const override;
  /// Symmetric PSD square root of the bending-energy matrix.
  Matrix regularizer() const override { return sqrt_bending_; }
  std::string kind() const override { return "tps"; }

  const Matrix& centers() const noexcept { return centers_; }
  double lambda() const noexcept { return lambda_; }
  /// K with lambda on the diagonal (l x l).
  const Matrix& kernel() const noexcept { return kernel_; }
  /// Homogeneous centres [C; 1^T] ((d+1) x l).
  const Matrix& lifted_centers() const noexcept { return lifted_; }
  /// E_lambda, (l+d+1) x l.
  const Matrix& recovery() const noexcept { return recovery_; }
  /// Top l x l block of E_lambda.
  const Matrix& bending() const noexcept { return bending_; }
  const Matrix& sqrt_bending() const noexcept { return sqrt_bending_; }

  /// [phi(|p_j - c_k|)]: l x m.
  Matrix kernel_features(const Matrix& points) const;
  /// Spline coefficients [w; a] = E_lambda W.
  Matrix coefficients(const Matrix& weights) const;

 private:
  Matrix centers_;
  double lambda_;
  Matrix kernel_;
  Matrix lifted_;
  Matrix recovery_;
  Matrix bending_;
  Matrix sqrt_bending_;
};

TpsModel tps_build(const Matrix& centers, double lambda);

/// B(D) = E_lambda^T [M_D; D; 1^T].
Matrix tps_basis(const TpsModel& model, const Matrix& points);

/// tr(W^T Ebar W).
double bending_energy(const TpsModel& model, const Matrix& weights);

/// A TPS centred on the forward images c'_k = W^T B(c_k) whose weights map
/// them back onto the original centres.
std::pair<TpsModel, Matrix> fit_inverse_tps(const TpsModel& model, const Matrix& weights,
                                            double lambda);

/// 1e-8 times the median |phi| over pairwise centre distances.
double default_internal_smoothing(const Matrix& centers);

struct TpsOptions {
  Index per_axis = 3;
  Index flat_axes = 0;
  /// mu_i = nnz(Gamma_i) * theta.
  double theta = 1.0;
  /// Internal kernel smoothing; negative selects default_internal_smoothing.
  double lambda = -1.0;
};

/// One TPS model per shape with centres placed on that shape's visible points.
std::vector<LbwModel> tps_models(const ShapeSet& set, const TpsOptions& options);

}  // namespace defgpa
