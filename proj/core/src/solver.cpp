#include <cmath>
#include <string>

#include "defgpa/error.hpp"
#include "defgpa/gpa.hpp"
#include "defgpa/spectral.hpp"
#include "least_squares.hpp"
#include "defgpa/parallel.hpp"

namespace defgpa {

namespace {

constexpr double kReflectionRankTolerance = 1e-12;

void check_models(const ShapeSet& set, const std::vector<LbwModel>& models) {
  if (models.size() != set.count()) {
    throw Error(ErrorCode::DimensionError, "need exactly one model per shape");
  }
  for (const LbwModel& model : models) {
    if (!model.basis) throw Error(ErrorCode::DimensionError, "model has no basis");
  }
}

std::vector<detail::ShapeSystem> build_systems(const ShapeSet& set,
                                               const std::vector<LbwModel>& models) {
  check_models(set, models);
  std::vector<std::optional<detail::ShapeSystem>> slots(set.count());
  parallel_for(set.count(), [&](std::size_t i) { slots[i].emplace(set[i], models[i], i); });
  std::vector<detail::ShapeSystem> systems;
  systems.reserve(set.count());
  for (auto& s : slots) systems.push_back(std::move(*s));
  return systems;
}

Matrix sum_projectors(const std::vector<detail::ShapeSystem>& systems, Index m) {
  std::vector<Matrix> terms(systems.size());
  parallel_for(systems.size(), [&](std::size_t i) { terms[i] = systems[i].projector(); });
  Matrix p = Matrix::Zero(m, m);
  for (const Matrix& t : terms) p += t;
  return 0.5 * (p + p.transpose());
}

Matrix orthogonal_rotation_cross(const Matrix& reference, const Shape& shape) {
  if (reference.rows() != shape.dim() || reference.cols() != shape.size()) {
    throw Error(ErrorCode::DimensionError, "reference and shape differ in size");
  }
  const std::vector<Index> vis = shape.visible_indices();
  const Matrix d = center(shape.visible_points());
  const Matrix s = center(Matrix(reference(Eigen::all, vis)));
  return d * s.transpose();
}

}  // namespace

Matrix shape_projector(const Shape& shape, const LbwModel& model, std::size_t index) {
  return detail::ShapeSystem(shape, model, index).projector();
}

Matrix assemble_P(const ShapeSet& set, const std::vector<LbwModel>& models) {
  return sum_projectors(build_systems(set, models), set.points());
}

Matrix affine_q(const ShapeSet& set) {
  const Index m = set.points();
  Matrix q = Matrix::Zero(m, m);
  for (const Shape& shape : set) {
    if (!shape.is_full()) throw Error(ErrorCode::DegenerateInput, "affine_q needs full shapes");
    const Matrix h = affine_basis(shape.points());
    q += h.transpose() * (h * h.transpose()).ldlt().solve(h);
  }
  return 0.5 * (q + q.transpose());
}

Matrix centered_q(const ShapeSet& set) {
  const Index m = set.points();
  Matrix q = Matrix::Zero(m, m);
  for (const Shape& shape : set) {
    if (!shape.is_full()) throw Error(ErrorCode::DegenerateInput, "centered_q needs full shapes");
    const Matrix c = center(shape.points());
    q += c.transpose() * (c * c.transpose()).ldlt().solve(c);
  }
  return 0.5 * (q + q.transpose());
}

std::vector<Matrix> fit_weights(const ShapeSet& set, const std::vector<LbwModel>& models,
                                const Matrix& reference) {
  const auto systems = build_systems(set, models);
  std::vector<Matrix> weights(set.count());
  parallel_for(set.count(), [&](std::size_t i) { weights[i] = systems[i].solve(reference); });
  return weights;
}

void evaluate_cost(GpaSolution& solution, const ShapeSet& set,
                   const std::vector<LbwModel>& models) {
  check_models(set, models);
  double data = 0.0;
  double reg = 0.0;
  for (std::size_t i = 0; i < set.count(); ++i) {
    const Shape& shape = set[i];
    const std::vector<Index> vis = shape.visible_indices();
    const Matrix& w = solution.weights[i];
    const Matrix mapped = w.transpose() * models[i].features(shape.visible_points());
    data += (mapped - solution.reference(Eigen::all, vis)).squaredNorm();
    if (models[i].smoothing > 0.0) {
      reg += models[i].smoothing * (models[i].regularizer() * w).squaredNorm();
    }
  }
  solution.data_cost = data;
  solution.regularization_cost = reg;
  solution.penalty_cost = solution.nu * solution.reference.rowwise().sum().squaredNorm();
}

namespace {

void finish(GpaSolution& solution, const ShapeSet& set, const std::vector<LbwModel>& models,
            const SolveOptions& options) {
  const bool usable_prior = solution.prior.lambdas().minCoeff() > 0.0;
  if (options.correct_reflection && usable_prior) {
    const std::size_t ref = options.reflection_reference.value_or(0);
    if (ref >= set.count()) {
      throw Error(ErrorCode::DimensionError, "reflection reference index out of range");
    }
    if (reflection_sign(solution.reference, set[ref]) < 0) {
      solution.reference.row(0) *= -1.0;
      solution.reflection_flipped = true;
    }
  }
  solution.weights = fit_weights(set, models, solution.reference);
  solution.smoothing.clear();
  for (const LbwModel& model : models) solution.smoothing.push_back(model.smoothing);
  evaluate_cost(solution, set, models);
}

void check_prior(const ShapeSet& set, const CovariancePrior& prior) {
  if (prior.dim() != set.dim()) {
    throw Error(ErrorCode::DimensionError, "prior dimension differs from the shapes");
  }
  if (prior.dim() > set.points() - 1) {
    throw Error(ErrorCode::DimensionError, "need d <= m - 1");
  }
}

// Sum of the Gram matrices of the centred visible points; invariant to rigid
// motions of each shape.
Matrix data_gram(const ShapeSet& set) {
  const Index m = set.points();
  Matrix gram = Matrix::Zero(m, m);
  for (const Shape& s : set) {
    const std::vector<Index> vis = s.visible_indices();
    const Matrix c = center(s.visible_points());
    gram(vis, vis) += c.transpose() * c;
  }
  return gram;
}

}  // namespace

GpaSolution solve(const ShapeSet& set, const std::vector<LbwModel>& models,
                  const CovariancePrior& prior, const SolveOptions& options) {
  check_prior(set, prior);
  const Index m = set.points();
  GpaSolution solution;
  solution.prior = prior;
  solution.nu = options.nu.value_or(static_cast<double>(set.count()) / static_cast<double>(m));
  if (!(solution.nu >= 0.0)) throw Error(ErrorCode::DegenerateInput, "nu must be >= 0");

  Matrix p = assemble_P(set, models);
  p.array() += solution.nu;
  solution.reference = bottom_d_scaled(p, prior, data_gram(set));
  finish(solution, set, models, options);
  return solution;
}

GpaSolution solve_affine_centered(const ShapeSet& set, const CovariancePrior& prior,
                                  const SolveOptions& options) {
  check_prior(set, prior);
  const Index m = set.points();
  GpaSolution solution;
  solution.prior = prior;
  solution.nu = options.nu.value_or(static_cast<double>(set.count()) / static_cast<double>(m));
  const Matrix x = top_d_excluding(centered_q(set), prior.dim(), Vector::Ones(m));
  solution.reference = prior.lambdas().cwiseSqrt().asDiagonal() * x.transpose();
  finish(solution, set, affine_models(set), options);
  return solution;
}

int reflection_sign(const Matrix& reference, const Shape& shape) {
  const Matrix e = orthogonal_rotation_cross(reference, shape);
  Eigen::JacobiSVD<Matrix> svd(e, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Vector& sigma = svd.singularValues();
  if (!(sigma(0) > 0.0) || sigma(sigma.size() - 1) <= kReflectionRankTolerance * sigma(0)) {
    throw Error(ErrorCode::DegenerateConfiguration,
                "reflection reference does not determine a rotation");
  }
  const double det = (svd.matrixV() * svd.matrixU().transpose()).determinant();
  return det < 0.0 ? -1 : 1;
}

Matrix correct_reflection(const Matrix& reference, const Shape& shape) {
  Matrix out = reference;
  if (reflection_sign(reference, shape) < 0) out.row(0) *= -1.0;
  return out;
}

}  // namespace defgpa
