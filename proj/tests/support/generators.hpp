#pragma once

#include <random>
#include <vector>

#include "defgpa/defgpa.hpp"

namespace defgpa::testing {

using Rng = std::mt19937_64;

Matrix random_matrix(Index rows, Index cols, Rng& rng, double scale = 1.0);
Matrix random_symmetric(Index m, Rng& rng);
/// Uniformly distributed rotation in SO(d).
Matrix random_rotation(Index d, Rng& rng);
/// Random shape with distinct principal variances (about 10, 6, 3 per axis).
Matrix base_shape(Index d, Index m, Rng& rng);

/// Hides about `fraction` of the points of each shape while keeping at least
/// `min_visible` per shape and every point visible somewhere.
ShapeSet mask_shapes(const std::vector<Matrix>& shapes, double fraction, Rng& rng,
                     Index min_visible);

/// D_i = A_i base + t_i (+ noise); A_i a rotation times a near-identity map.
std::vector<Matrix> affine_family(const Matrix& base, Index n, Rng& rng, double noise = 0.0,
                                  double shear = 0.2);
/// D_i = R_i base + t_i (+ noise).
std::vector<Matrix> rigid_family(const Matrix& base, Index n, Rng& rng, double noise = 0.0);

ShapeSet full_set(const std::vector<Matrix>& shapes);

struct TpsFamily {
  ShapeSet set;
  Matrix base;
  /// Residual ||T_i(D_i) - base|| reached by the construction.
  double construction_residual = 0.0;
};

/// Shapes D_i for which a TPS with centres placed on D_i itself (k per axis)
/// maps D_i exactly onto `base`.
TpsFamily tps_family(const Matrix& base, Index n, Index k, Rng& rng, double amplitude = 0.05);

}  // namespace defgpa::testing
