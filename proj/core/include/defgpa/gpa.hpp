#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "defgpa/procrustes.hpp"
#include "defgpa/shapes.hpp"
#include "defgpa/types.hpp"
#include "defgpa/warps.hpp"

namespace defgpa {

/// All n^2 pairwise similarity transforms; at(i, k) maps shape k into the
/// frame of shape i. Pairs that share fewer than d+1 points (or whose overlap
/// is degenerate) are left empty.
class TransformTable {
 public:
  TransformTable() = default;
  explicit TransformTable(std::size_t n) : n_(n), table_(n * n) {}

  std::size_t size() const noexcept { return n_; }
  const std::optional<SimilarityTransform>& at(std::size_t i, std::size_t k) const {
    return table_[i * n_ + k];
  }
  std::optional<SimilarityTransform>& at(std::size_t i, std::size_t k) {
    return table_[i * n_ + k];
  }

 private:
  std::size_t n_ = 0;
  std::vector<std::optional<SimilarityTransform>> table_;
};

TransformTable pairwise_transform_table(const ShapeSet& set, bool allow_reflection = false);

/// Full d x m shape i: visible points kept, each missing point the average
/// of the other shapes' observations mapped into frame i.
/// UnconstrainedPoint when no usable shape observes a missing point.
Matrix complete_shape(const ShapeSet& set, std::size_t i, const TransformTable& table);

/// Completes every shape (full shapes are returned as-is).
std::vector<Matrix> complete_shapes(const ShapeSet& set, bool allow_reflection = false);

/// Reference covariance prior from full shapes. DegenerateInput on a
/// zero-scale shape or an empty input.
CovariancePrior estimate_prior(const std::vector<Matrix>& full_shapes);
/// As above; partial sets are completed first.
CovariancePrior estimate_prior(const ShapeSet& set, bool allow_reflection = false);

/// P = sum_i (Gamma_i - Gamma_i B_i^T (B_i Gamma_i B_i^T + mu_i Z_i^T Z_i)^{-1} B_i Gamma_i).
Matrix assemble_P(const ShapeSet& set, const std::vector<LbwModel>& models);
/// The per-shape term of assemble_P.
Matrix shape_projector(const Shape& shape, const LbwModel& model, std::size_t index = 0);

/// Q_I = sum_i D~_i^T (D~_i D~_i^T)^{-1} D~_i with D~_i the homogeneous shapes.
Matrix affine_q(const ShapeSet& set);
/// The centred form sum_i Dbar_i^T (Dbar_i Dbar_i^T)^{-1} Dbar_i.
Matrix centered_q(const ShapeSet& set);

struct SolveOptions {
  /// Penalty weight on ||S 1||^2; n/m when unset.
  std::optional<double> nu;
  /// Shape used to fix the reflection; the first shape when unset.
  std::optional<std::size_t> reflection_reference;
  bool correct_reflection = true;
};

struct GpaSolution {
  Matrix reference;
  std::vector<Matrix> weights;
  CovariancePrior prior;
  double nu = 0.0;
  std::vector<double> smoothing;
  /// sum_i ||(W_i^T B_i - S) Gamma_i||^2
  double data_cost = 0.0;
  /// sum_i mu_i ||Z_i W_i||^2
  double regularization_cost = 0.0;
  /// nu ||S 1||^2
  double penalty_cost = 0.0;
  bool reflection_flipped = false;

  double cost() const { return data_cost + regularization_cost + penalty_cost; }
};

/// Closed-form solve: S* from the bottom eigenvectors of P + nu 11^T scaled
/// by sqrt(Lambda), then per-shape least-squares weights.
GpaSolution solve(const ShapeSet& set, const std::vector<LbwModel>& models,
                  const CovariancePrior& prior, const SolveOptions& options = {});

/// Optimal weights for a fixed reference (one l x d matrix per shape).
std::vector<Matrix> fit_weights(const ShapeSet& set, const std::vector<LbwModel>& models,
                                const Matrix& reference);

/// Fills the three cost terms of `solution` from its reference and weights.
void evaluate_cost(GpaSolution& solution, const ShapeSet& set,
                   const std::vector<LbwModel>& models);

/// Affine GPA on full shapes through the translation-free form: S* from the
/// d top eigenvectors of centered_q (excluding 1) scaled by sqrt(Lambda).
GpaSolution solve_affine_centered(const ShapeSet& set, const CovariancePrior& prior,
                                  const SolveOptions& options = {});

/// Negates the first row of S when the orthogonal Procrustes rotation from
/// the reference shape's visible points to S has determinant -1.
/// DegenerateConfiguration when that rotation is not determined.
Matrix correct_reflection(const Matrix& reference, const Shape& shape);
/// Sign of det of that rotation (+1 or -1).
int reflection_sign(const Matrix& reference, const Shape& shape);

struct ShapeConditions {
  /// max |(P_i 1)_j|
  double projector_residual = 0.0;
  bool witness_found = false;
};

/// Evaluation of the equivalent free-translation statements.
/// Full shapes: (a) P 1 = 0, (b) Q 1 = n 1, (c) Q_i 1 = 1 for all i,
/// (d) tr(S P S^T) invariant to translating S, (e) a witness x exists for
/// all i. Partial shapes: (a) P 1 = 0, (b) P_i 1 = 0 for all i, (c) a
/// witness exists for all i.
struct TheoremReport {
  bool full = true;
  double tolerance = 1e-6;
  std::vector<ShapeConditions> shapes;
  double aggregate_residual = 0.0;
  double q_residual = 0.0;
  double translation_residual = 0.0;

  std::vector<bool> verdicts() const;
  bool all_pass() const;
  bool all_fail() const;
  bool consistent() const { return all_pass() || all_fail(); }
};

TheoremReport check_theorem_conditions(const ShapeSet& set, const std::vector<LbwModel>& models);

}  // namespace defgpa
