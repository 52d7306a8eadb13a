#pragma once

#include <string>
#include <vector>

#include "defgpa/types.hpp"

namespace defgpa {

using Visibility = std::vector<bool>;

/// One datum shape: d x m points stored as columns plus a visibility flag per
/// point. Missing columns hold NaN so that accidental reads are loud.
class Shape {
 public:
  Shape() = default;
  /// Full shape, every point visible.
  explicit Shape(Matrix points, std::string id = {});
  /// Partial shape. Visible columns must be finite; invisible columns are
  /// overwritten with NaN. Throws FormatError on size mismatch or non-finite
  /// visible data, InsufficientOverlap with fewer than d+1 visible points.
  Shape(Matrix points, Visibility visible, std::string id = {});

  const Matrix& points() const noexcept { return points_; }
  const Visibility& visibility() const noexcept { return visible_; }
  const std::string& id() const noexcept { return id_; }

  Index dim() const noexcept { return points_.rows(); }
  Index size() const noexcept { return points_.cols(); }
  bool visible(Index j) const { return visible_[static_cast<std::size_t>(j)]; }
  Index visible_count() const noexcept { return visible_count_; }
  bool is_full() const noexcept { return visible_count_ == size(); }

  /// Indices of visible points, ascending.
  std::vector<Index> visible_indices() const;
  /// Visible columns gathered into a d x nnz matrix.
  Matrix visible_points() const;
  /// Diagonal of the visibility matrix as 0/1 entries.
  Vector mask() const;

 private:
  Matrix points_;
  Visibility visible_;
  std::string id_;
  Index visible_count_ = 0;
};

/// n shapes over the same d and m with positional correspondence.
class ShapeSet {
 public:
  ShapeSet() = default;
  /// Throws FormatError when shapes disagree on d or m (or the set is empty)
  /// and UnconstrainedPoint when a point index is visible in no shape.
  explicit ShapeSet(std::vector<Shape> shapes);

  const std::vector<Shape>& shapes() const noexcept { return shapes_; }
  const Shape& operator[](std::size_t i) const { return shapes_[i]; }
  std::size_t count() const noexcept { return shapes_.size(); }
  Index dim() const noexcept { return shapes_.empty() ? 0 : shapes_.front().dim(); }
  Index points() const noexcept { return shapes_.empty() ? 0 : shapes_.front().size(); }
  bool all_full() const;
  /// Sum of visible-point counts (the kappa normaliser of the RMSE metrics).
  Index total_visible() const;
  /// Index of the shape with the given id, or count() when absent.
  std::size_t find(const std::string& id) const;

  auto begin() const { return shapes_.begin(); }
  auto end() const { return shapes_.end(); }

 private:
  std::vector<Shape> shapes_;
};

/// Mean of the columns. With visible_only the mean runs over visible points;
/// otherwise the shape must be full (DegenerateInput).
Vector centroid(const Shape& shape, bool visible_only = true);
Vector centroid(const Matrix& points);

/// Translates visible points so their centroid is the origin.
Shape center(const Shape& shape);
Matrix center(const Matrix& points);

/// (S - mean 1^T)(S - mean 1^T)^T for a full shape (DegenerateInput otherwise).
Matrix covariance(const Shape& shape);
Matrix covariance(const Matrix& points);

}  // namespace defgpa
