#include <string>

#include "defgpa/error.hpp"
#include "defgpa/gpa.hpp"

namespace defgpa {

TransformTable pairwise_transform_table(const ShapeSet& set, bool allow_reflection) {
  const std::size_t n = set.count();
  TransformTable table(n);
  for (std::size_t i = 0; i < n; ++i) {
    table.at(i, i) = SimilarityTransform::identity(set.dim());
    for (std::size_t k = 0; k < n; ++k) {
      if (k == i) continue;
      try {
        table.at(i, k) = pairwise_similarity_procrustes(set[k], set[i], allow_reflection);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::InsufficientOverlap &&
            e.code() != ErrorCode::DegenerateConfiguration) {
          throw;
        }
      }
    }
  }
  return table;
}

Matrix complete_shape(const ShapeSet& set, std::size_t i, const TransformTable& table) {
  const Shape& shape = set[i];
  if (table.size() != set.count()) {
    throw Error(ErrorCode::DimensionError, "transform table does not match the shape set");
  }
  Matrix full = shape.points();
  if (shape.is_full()) return full;

  const Index d = set.dim();
  Matrix sum = Matrix::Zero(d, set.points());
  Vector weight = Vector::Zero(set.points());
  for (std::size_t k = 0; k < set.count(); ++k) {
    const auto& t = table.at(i, k);
    if (!t) continue;
    const Shape& other = set[k];
    for (Index j = 0; j < set.points(); ++j) {
      if (shape.visible(j) || !other.visible(j)) continue;
      sum.col(j) += t->scale * t->rotation * other.points().col(j) + t->translation;
      weight(j) += 1.0;
    }
  }
  for (Index j = 0; j < set.points(); ++j) {
    if (shape.visible(j)) continue;
    if (weight(j) == 0.0) {
      throw Error(ErrorCode::UnconstrainedPoint,
                  "point " + std::to_string(j) + " of shape " + std::to_string(i) +
                      " cannot be completed from any overlapping shape");
    }
    full.col(j) = sum.col(j) / weight(j);
  }
  return full;
}

std::vector<Matrix> complete_shapes(const ShapeSet& set, bool allow_reflection) {
  std::vector<Matrix> out;
  out.reserve(set.count());
  if (set.all_full()) {
    for (const Shape& s : set) out.push_back(s.points());
    return out;
  }
  const TransformTable table = pairwise_transform_table(set, allow_reflection);
  for (std::size_t i = 0; i < set.count(); ++i) out.push_back(complete_shape(set, i, table));
  return out;
}

}  // namespace defgpa
