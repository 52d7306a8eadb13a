#include "defgpa/shapes.hpp"

#include <limits>

#include "defgpa/error.hpp"

namespace defgpa {

namespace {

Visibility all_visible(Index m) { return Visibility(static_cast<std::size_t>(m), true); }

}  // namespace

Shape::Shape(Matrix points, std::string id)
    : Shape(std::move(points), Visibility{}, std::move(id)) {}

Shape::Shape(Matrix points, Visibility visible, std::string id)
    : points_(std::move(points)), visible_(std::move(visible)), id_(std::move(id)) {
  if (visible_.empty()) visible_ = all_visible(points_.cols());
  if (static_cast<Index>(visible_.size()) != points_.cols()) {
    throw Error(ErrorCode::FormatError, "visibility mask length does not match point count");
  }
  if (points_.rows() < 1) throw Error(ErrorCode::FormatError, "shape has zero dimension");
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (Index j = 0; j < points_.cols(); ++j) {
    if (visible_[static_cast<std::size_t>(j)]) {
      if (!points_.col(j).allFinite()) {
        throw Error(ErrorCode::FormatError,
                    "visible point " + std::to_string(j) + " is not finite");
      }
      ++visible_count_;
    } else {
      points_.col(j).setConstant(nan);
    }
  }
  if (visible_count_ < points_.rows() + 1) {
    throw Error(ErrorCode::InsufficientOverlap,
                "shape '" + id_ + "' has fewer than d+1 visible points");
  }
}

std::vector<Index> Shape::visible_indices() const {
  std::vector<Index> idx;
  idx.reserve(static_cast<std::size_t>(visible_count_));
  for (Index j = 0; j < size(); ++j) {
    if (visible(j)) idx.push_back(j);
  }
  return idx;
}

Matrix Shape::visible_points() const { return points_(Eigen::all, visible_indices()); }

Vector Shape::mask() const {
  Vector g(size());
  for (Index j = 0; j < size(); ++j) g[j] = visible(j) ? 1.0 : 0.0;
  return g;
}

ShapeSet::ShapeSet(std::vector<Shape> shapes) : shapes_(std::move(shapes)) {
  if (shapes_.empty()) throw Error(ErrorCode::FormatError, "shape set is empty");
  const Index d = shapes_.front().dim();
  const Index m = shapes_.front().size();
  for (const Shape& s : shapes_) {
    if (s.dim() != d || s.size() != m) {
      throw Error(ErrorCode::FormatError, "shapes disagree on dimension or point count");
    }
  }
  for (Index j = 0; j < m; ++j) {
    bool seen = false;
    for (const Shape& s : shapes_) seen = seen || s.visible(j);
    if (!seen) {
      throw Error(ErrorCode::UnconstrainedPoint,
                  "point " + std::to_string(j) + " is visible in no shape");
    }
  }
  for (std::size_t i = 0; i < shapes_.size(); ++i) {
    if (shapes_[i].id().empty()) {
      shapes_[i] = Shape(shapes_[i].points(), shapes_[i].visibility(), "s" + std::to_string(i));
    }
  }
}

bool ShapeSet::all_full() const {
  for (const Shape& s : shapes_) {
    if (!s.is_full()) return false;
  }
  return true;
}

Index ShapeSet::total_visible() const {
  Index k = 0;
  for (const Shape& s : shapes_) k += s.visible_count();
  return k;
}

std::size_t ShapeSet::find(const std::string& id) const {
  for (std::size_t i = 0; i < shapes_.size(); ++i) {
    if (shapes_[i].id() == id) return i;
  }
  return shapes_.size();
}

Vector centroid(const Matrix& points) {
  if (points.cols() == 0) throw Error(ErrorCode::DegenerateInput, "empty point set");
  return points.rowwise().mean();
}

Vector centroid(const Shape& shape, bool visible_only) {
  if (!visible_only && !shape.is_full()) {
    throw Error(ErrorCode::DegenerateInput, "shape has missing points");
  }
  return centroid(shape.visible_points());
}

Matrix center(const Matrix& points) {
  return points.colwise() - centroid(points);
}

Shape center(const Shape& shape) {
  const Vector c = centroid(shape, true);
  Matrix p = shape.points();
  for (Index j = 0; j < p.cols(); ++j) {
    if (shape.visible(j)) p.col(j) -= c;
  }
  return Shape(std::move(p), shape.visibility(), shape.id());
}

Matrix covariance(const Matrix& points) {
  const Matrix c = center(points);
  return c * c.transpose();
}

Matrix covariance(const Shape& shape) {
  if (!shape.is_full()) {
    throw Error(ErrorCode::DegenerateInput, "covariance needs a full shape");
  }
  return covariance(shape.points());
}

}  // namespace defgpa
