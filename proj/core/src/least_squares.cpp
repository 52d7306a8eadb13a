#include "least_squares.hpp"

#include <cmath>
#include <algorithm>
#include <string>

#include "defgpa/error.hpp"

namespace defgpa::detail {

namespace {

constexpr double kRankThreshold = 1e-13;
constexpr double kJitter = 1e-12;

}  // namespace

ShapeSystem::ShapeSystem(const Shape& shape, const LbwModel& model, std::size_t index)
    : points_(shape.size()), visible_(shape.visible_indices()) {
  if (model.dimension() != shape.dim()) {
    throw Error(ErrorCode::DimensionError,
                "model dimension differs from shape " + std::to_string(index));
  }
  if (!(model.smoothing >= 0.0)) {
    throw Error(ErrorCode::DegenerateInput, "smoothing must be >= 0");
  }
  features_ = model.features(shape.visible_points());
  const Index mv = features_.cols();
  const Index l = features_.rows();
  const Matrix z = model.smoothing > 0.0 ? Matrix(std::sqrt(model.smoothing) * model.regularizer())
                                         : Matrix(0, l);
  stacked_.resize(mv + z.rows(), l);
  stacked_ << features_.transpose(), z;

  qr_.setThreshold(kRankThreshold);
  qr_.compute(stacked_);
  if (qr_.rank() < l) {
    const double eps = std::sqrt(kJitter * std::max(stacked_.squaredNorm(), 1e-300));
    Matrix padded(stacked_.rows() + l, l);
    padded << stacked_, eps * Matrix::Identity(l, l);
    stacked_.swap(padded);
    qr_.compute(stacked_);
    jittered_ = true;
    if (qr_.rank() < l) {
      throw SingularSystemError(index, "normal matrix of shape " + std::to_string(index) +
                                           " is singular");
    }
  }
  const Matrix q = qr_.householderQ() * Matrix::Identity(stacked_.rows(), l);
  q_visible_ = q.topRows(mv);
}

Matrix ShapeSystem::projector() const {
  const Index mv = static_cast<Index>(visible_.size());
  const Matrix block = Matrix::Identity(mv, mv) - q_visible_ * q_visible_.transpose();
  Matrix p = Matrix::Zero(points_, points_);
  p(visible_, visible_) = block;
  return p;
}

Matrix ShapeSystem::solve(const Matrix& reference) const {
  Matrix rhs = Matrix::Zero(stacked_.rows(), reference.rows());
  rhs.topRows(static_cast<Index>(visible_.size())) = reference(Eigen::all, visible_).transpose();
  return qr_.solve(rhs);
}

}  // namespace defgpa::detail
