#pragma once

#include "defgpa/shapes.hpp"
#include "defgpa/types.hpp"

namespace defgpa {

/// x -> scale * rotation * x + translation.
struct SimilarityTransform {
  double scale = 1.0;
  Matrix rotation;
  Vector translation;

  static SimilarityTransform identity(Index dim);
  Matrix apply(const Matrix& points) const;
};

/// Least-squares similarity (or rigid, with fit_scale = false) transform
/// taking the columns of `from` onto the columns of `to`. With
/// allow_reflection = false the rotation is restricted to SO(d).
/// DegenerateConfiguration when the cross-covariance rank leaves the
/// rotation undetermined (below d-1 for SO(d), below d for O(d)) or `from`
/// has no spread.
SimilarityTransform similarity_procrustes(const Matrix& from, const Matrix& to,
                                          bool allow_reflection, bool fit_scale = true);

/// Similarity Procrustes over the points visible in both shapes, mapping D1
/// onto D2. InsufficientOverlap below d+1 joint points.
SimilarityTransform pairwise_similarity_procrustes(const Shape& d1, const Shape& d2,
                                                   bool allow_reflection);

}  // namespace defgpa
