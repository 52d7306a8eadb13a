#include "defgpa/procrustes.hpp"

#include "defgpa/error.hpp"

namespace defgpa {

namespace {

constexpr double kRankTolerance = 1e-12;

}  // namespace

SimilarityTransform SimilarityTransform::identity(Index dim) {
  return {1.0, Matrix::Identity(dim, dim), Vector::Zero(dim)};
}

Matrix SimilarityTransform::apply(const Matrix& points) const {
  return ((scale * rotation) * points).colwise() + translation;
}

SimilarityTransform similarity_procrustes(const Matrix& from, const Matrix& to,
                                          bool allow_reflection, bool fit_scale) {
  const Index d = from.rows();
  if (to.rows() != d || to.cols() != from.cols()) {
    throw Error(ErrorCode::DimensionError, "Procrustes inputs must have equal shape");
  }
  if (from.cols() < 1) throw Error(ErrorCode::InsufficientOverlap, "no points to align");
  const Vector mean_from = from.rowwise().mean();
  const Vector mean_to = to.rowwise().mean();
  const Matrix a = from.colwise() - mean_from;
  const Matrix b = to.colwise() - mean_to;
  const double spread = a.squaredNorm();
  if (!(spread > 0.0)) {
    throw Error(ErrorCode::DegenerateConfiguration, "source points coincide");
  }

  const Matrix cross = b * a.transpose();
  Eigen::JacobiSVD<Matrix> svd(cross, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Vector& sigma = svd.singularValues();
  Index rank = 0;
  for (Index k = 0; k < d; ++k) rank += sigma(k) > kRankTolerance * sigma(0) ? 1 : 0;
  if (!(sigma(0) > 0.0) || rank < (allow_reflection ? d : d - 1)) {
    throw Error(ErrorCode::DegenerateConfiguration,
                "cross-covariance is too rank-deficient to fix the rotation");
  }

  Vector signs = Vector::Ones(d);
  if (!allow_reflection) {
    signs(d - 1) = (svd.matrixU() * svd.matrixV().transpose()).determinant() < 0.0 ? -1.0 : 1.0;
  }
  SimilarityTransform t;
  t.rotation = svd.matrixU() * signs.asDiagonal() * svd.matrixV().transpose();
  t.scale = fit_scale ? sigma.dot(signs) / spread : 1.0;
  t.translation = mean_to - t.scale * t.rotation * mean_from;
  return t;
}

SimilarityTransform pairwise_similarity_procrustes(const Shape& d1, const Shape& d2,
                                                   bool allow_reflection) {
  if (d1.dim() != d2.dim() || d1.size() != d2.size()) {
    throw Error(ErrorCode::DimensionError, "shapes differ in d or m");
  }
  std::vector<Index> joint;
  for (Index j = 0; j < d1.size(); ++j) {
    if (d1.visible(j) && d2.visible(j)) joint.push_back(j);
  }
  if (static_cast<Index>(joint.size()) < d1.dim() + 1) {
    throw Error(ErrorCode::InsufficientOverlap, "fewer than d+1 jointly visible points");
  }
  return similarity_procrustes(d1.points()(Eigen::all, joint), d2.points()(Eigen::all, joint),
                               allow_reflection);
}

}  // namespace defgpa
