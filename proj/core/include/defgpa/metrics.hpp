#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "defgpa/gpa.hpp"

namespace defgpa {

/// sqrt(sum_i ||(T_i(D_i) - S*) Gamma_i||^2 / kappa), kappa = sum_i nnz(Gamma_i).
double rmse_r(const GpaSolution& solution, const ShapeSet& set,
              const std::vector<LbwModel>& models);

/// sqrt(sum_i ||(D_i - T_i^{-1}(S*)) Gamma_i||^2 / kappa). Affine warps are
/// inverted exactly (SingularTransform when not invertible); TPS warps
/// through fit_inverse_tps with the forward model's internal smoothing.
/// Other bases raise Unsupported.
double rmse_d(const GpaSolution& solution, const ShapeSet& set,
              const std::vector<LbwModel>& models);

/// T_i^{-1}(S*) for one shape, d x m.
Matrix inverse_warp_reference(const Matrix& reference, const LbwModel& model,
                              const Matrix& weights);

struct RigidAlignment {
  Matrix rotation;
  Vector translation;

  Matrix apply(const Matrix& points) const;
};

/// Rigid (R in SO(d), t) minimising ||(R A + t 1^T - B) over the masked
/// columns||. An empty mask uses every column. InsufficientOverlap below
/// d+1 columns; DegenerateConfiguration when the rotation is undetermined.
RigidAlignment gauge_align(const Matrix& a, const Matrix& b, const Visibility& mask = {});

struct CveConfig {
  /// Points per held-out fold; the last fold takes the remainder.
  Index group_size = 1;
  /// When set, point indices are shuffled with this seed before folding.
  std::optional<std::uint64_t> seed;
  /// Re-estimate the covariance prior from the kept points of each fold.
  /// When false every fold reuses the prior passed in.
  bool reestimate_prior = true;
};

struct CveResult {
  double cve = 0.0;
  /// Predicted reference shapes, NaN where the point is not observed.
  std::vector<Matrix> predicted;
  /// Reference of the full solve the predictions are compared against.
  Matrix reference;
  /// Indices (in fold order) of folds skipped because the reduced problem
  /// left a point unconstrained.
  std::vector<std::size_t> skipped_folds;
  std::size_t folds = 0;
};

/// Fold layout: contiguous index groups of size N, or a seeded shuffle.
std::vector<std::vector<Index>> make_folds(Index m, const CveConfig& config);

/// Leave-N-out cross-validation of the registration. Each fold re-solves
/// without its points (same models; prior per CveConfig; nu as in `options`), predicts
/// the held-out points through the fold's warps, and aligns the fold
/// reference to the full reference with a rigid Procrustes on the kept
/// points. Only originally visible points enter the error.
CveResult cross_validation_error(const ShapeSet& set, const std::vector<LbwModel>& models,
                                 const CovariancePrior& prior, const SolveOptions& options,
                                 const CveConfig& config);

/// A copy of the set restricted to the given point columns.
ShapeSet select_points(const ShapeSet& set, const std::vector<Index>& columns);

}  // namespace defgpa
