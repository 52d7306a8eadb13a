#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "defgpa/shapes.hpp"
#include "defgpa/types.hpp"

namespace defgpa {

/// A feature map B(.) whose warps are W^T B(D). Column j of features(D)
/// depends only on column j of D.
class WarpBasis {
 public:
  virtual ~WarpBasis() = default;

  virtual Index dimension() const = 0;
  virtual Index feature_dim() const = 0;
  /// l x m feature matrix for a d x m point matrix.
  virtual Matrix features(const Matrix& points) const = 0;
  /// Z with ||Z W||_F^2 the regulariser; Z^T Z is PSD. Defaults to 0 x l.
  virtual Matrix regularizer() const;
  virtual std::string kind() const = 0;
};

/// Homogeneous coordinates [D; 1^T].
class AffineBasis final : public WarpBasis {
 public:
  explicit AffineBasis(Index dim);

  Index dimension() const override { return dim_; }
  Index feature_dim() const override { return dim_ + 1; }
  Matrix features(const Matrix& points) const override;
  std::string kind() const override { return "affine"; }

 private:
  Index dim_;
};

/// One warp instance: a basis plus its smoothing weight mu.
struct LbwModel {
  std::shared_ptr<const WarpBasis> basis;
  double smoothing = 0.0;

  Index feature_dim() const { return basis->feature_dim(); }
  Index dimension() const { return basis->dimension(); }
  Matrix features(const Matrix& points) const { return basis->features(points); }
  Matrix regularizer() const { return basis->regularizer(); }
};

/// [D; 1^T].
Matrix affine_basis(const Matrix& points);

/// W^T B(D). DimensionError when W is not l x d or D has the wrong row count.
Matrix apply_warp(const LbwModel& model, const Matrix& weights, const Matrix& points);

/// x with B(D)^T x = 1 and, when mu > 0, Z x = 0 (both within 1e-6 in the
/// max norm), or nullopt when no such x exists. Pass only the points that
/// take part (the visible ones for partial shapes).
std::optional<Vector> free_translation_witness(const LbwModel& model, const Matrix& points);

/// Exact inverse of the affine warp with parameters W ((d+1) x d).
/// SingularTransform when the linear part is not invertible.
Matrix affine_inverse(const Matrix& weights);

/// Per-shape affine models with mu = 0.
std::vector<LbwModel> affine_models(const ShapeSet& set);

/// A k^d grid of control centres along the principal axes of the shape's
/// visible points, spanning their extent. The `flat_axes` smallest-variance
/// axes get two layers instead of k. DegenerateCenters on zero extent.
Matrix place_control_points(const Shape& shape, Index k, Index flat_axes = 0);

}  // namespace defgpa
