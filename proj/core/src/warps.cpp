#include "defgpa/warps.hpp"

#include <cmath>

#include "defgpa/error.hpp"
#include "defgpa/spectral.hpp"

namespace defgpa {

namespace {

constexpr double kWitnessTolerance = 1e-6;

}  // namespace

Matrix WarpBasis::regularizer() const { return Matrix::Zero(0, feature_dim()); }

AffineBasis::AffineBasis(Index dim) : dim_(dim) {
  if (dim < 1) throw Error(ErrorCode::DimensionError, "affine basis needs d >= 1");
}

Matrix AffineBasis::features(const Matrix& points) const {
  if (points.rows() != dim_) {
    throw Error(ErrorCode::DimensionError, "point dimension does not match the basis");
  }
  return affine_basis(points);
}

Matrix affine_basis(const Matrix& points) {
  Matrix out(points.rows() + 1, points.cols());
  out.topRows(points.rows()) = points;
  out.bottomRows(1).setOnes();
  return out;
}

Matrix apply_warp(const LbwModel& model, const Matrix& weights, const Matrix& points) {
  if (weights.rows() != model.feature_dim() || weights.cols() != model.dimension() ||
      points.rows() != model.dimension()) {
    throw Error(ErrorCode::DimensionError, "warp parameters do not match the model");
  }
  return weights.transpose() * model.features(points);
}

std::optional<Vector> free_translation_witness(const LbwModel& model, const Matrix& points) {
  const Matrix b = model.features(points);
  const Matrix z = model.smoothing > 0.0 ? model.regularizer() : Matrix(0, b.rows());
  Matrix a(b.cols() + z.rows(), b.rows());
  a << b.transpose(), z;
  Vector rhs = Vector::Zero(a.rows());
  rhs.head(b.cols()).setOnes();

  const Vector x = a.completeOrthogonalDecomposition().solve(rhs);
  const double fit = (b.transpose() * x - Vector::Ones(b.cols())).lpNorm<Eigen::Infinity>();
  const double reg = z.rows() > 0 ? (z * x).lpNorm<Eigen::Infinity>() : 0.0;
  if (!(fit < kWitnessTolerance && reg < kWitnessTolerance)) return std::nullopt;
  return x;
}

Matrix affine_inverse(const Matrix& weights) {
  const Index d = weights.cols();
  if (weights.rows() != d + 1) {
    throw Error(ErrorCode::DimensionError, "affine parameters must be (d+1) x d");
  }
  const Matrix a = weights.topRows(d).transpose();
  const Vector t = weights.row(d).transpose();
  Eigen::FullPivLU<Matrix> lu(a);
  lu.setThreshold(1e-12);
  if (!lu.isInvertible()) {
    throw Error(ErrorCode::SingularTransform, "affine warp has a singular linear part");
  }
  const Matrix a_inv = lu.inverse();
  Matrix inv(d + 1, d);
  inv.topRows(d) = a_inv.transpose();
  inv.row(d) = (-a_inv * t).transpose();
  return inv;
}

std::vector<LbwModel> affine_models(const ShapeSet& set) {
  auto basis = std::make_shared<const AffineBasis>(set.dim());
  return std::vector<LbwModel>(set.count(), LbwModel{basis, 0.0});
}

Matrix place_control_points(const Shape& shape, Index k, Index flat_axes) {
  const Index d = shape.dim();
  if (k < 2) throw Error(ErrorCode::DegenerateCenters, "need at least 2 control points per axis");
  if (flat_axes < 0 || flat_axes >= d) {
    throw Error(ErrorCode::DimensionError, "flat_axes must lie in [0, d)");
  }
  const Matrix pts = shape.visible_points();
  const Vector mean = centroid(pts);
  const Matrix centered = pts.colwise() - mean;

  // Principal axes, largest variance first.
  const EigenPairs eig = eig_sym(centered * centered.transpose());
  const Matrix axes = eig.vectors.rowwise().reverse();
  const Matrix proj = axes.transpose() * centered;
  const Vector lo = proj.rowwise().minCoeff();
  const Vector hi = proj.rowwise().maxCoeff();
  const double span = (hi - lo).maxCoeff();

  std::vector<Index> counts(static_cast<std::size_t>(d), k);
  for (Index a = d - flat_axes; a < d; ++a) counts[static_cast<std::size_t>(a)] = 2;
  Index l = 1;
  for (Index a = 0; a < d; ++a) {
    if (!(hi(a) - lo(a) > 1e-12 * span) || !(span > 0.0)) {
      throw Error(ErrorCode::DegenerateCenters, "shape has zero extent along a principal axis");
    }
    l *= counts[static_cast<std::size_t>(a)];
  }

  Matrix grid(d, l);
  for (Index c = 0; c < l; ++c) {
    Index rest = c;
    for (Index a = 0; a < d; ++a) {
      const Index n = counts[static_cast<std::size_t>(a)];
      const Index step = rest % n;
      rest /= n;
      grid(a, c) = lo(a) + (hi(a) - lo(a)) * static_cast<double>(step) / static_cast<double>(n - 1);
    }
  }
  return (axes * grid).colwise() + mean;
}

}  // namespace defgpa
