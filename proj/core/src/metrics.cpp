#include "defgpa/metrics.hpp"

#include <cmath>
#include <memory>

#include "defgpa/error.hpp"
#include "defgpa/tps.hpp"

namespace defgpa {

namespace {

void check(const GpaSolution& solution, const ShapeSet& set, const std::vector<LbwModel>& models) {
  if (solution.weights.size() != set.count() || models.size() != set.count() ||
      solution.reference.rows() != set.dim() || solution.reference.cols() != set.points()) {
    throw Error(ErrorCode::DimensionError, "solution does not match the shape set");
  }
}

double masked_rms(double sum, Index kappa) {
  return kappa > 0 ? std::sqrt(sum / static_cast<double>(kappa)) : 0.0;
}

}  // namespace

double rmse_r(const GpaSolution& solution, const ShapeSet& set,
              const std::vector<LbwModel>& models) {
  check(solution, set, models);
  double sum = 0.0;
  for (std::size_t i = 0; i < set.count(); ++i) {
    const std::vector<Index> vis = set[i].visible_indices();
    const Matrix mapped = apply_warp(models[i], solution.weights[i], set[i].visible_points());
    sum += (mapped - solution.reference(Eigen::all, vis)).squaredNorm();
  }
  return masked_rms(sum, set.total_visible());
}

Matrix inverse_warp_reference(const Matrix& reference, const LbwModel& model,
                              const Matrix& weights) {
  if (dynamic_cast<const AffineBasis*>(model.basis.get()) != nullptr) {
    const Matrix inv = affine_inverse(weights);
    return inv.transpose() * affine_basis(reference);
  }
  if (const auto* tps = dynamic_cast<const TpsModel*>(model.basis.get())) {
    const auto [inverse, inv_weights] = fit_inverse_tps(*tps, weights, tps->lambda());
    return inv_weights.transpose() * inverse.features(reference);
  }
  throw Error(ErrorCode::Unsupported, "no inverse warp for basis '" + model.basis->kind() + "'");
}

double rmse_d(const GpaSolution& solution, const ShapeSet& set,
              const std::vector<LbwModel>& models) {
  check(solution, set, models);
  double sum = 0.0;
  for (std::size_t i = 0; i < set.count(); ++i) {
    const std::vector<Index> vis = set[i].visible_indices();
    const Matrix back = inverse_warp_reference(solution.reference, models[i], solution.weights[i]);
    sum += (set[i].visible_points() - back(Eigen::all, vis)).squaredNorm();
  }
  return masked_rms(sum, set.total_visible());
}

Matrix RigidAlignment::apply(const Matrix& points) const {
  return (rotation * points).colwise() + translation;
}

RigidAlignment gauge_align(const Matrix& a, const Matrix& b, const Visibility& mask) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::DimensionError, "gauge_align inputs differ in size");
  }
  std::vector<Index> cols;
  for (Index j = 0; j < a.cols(); ++j) {
    if (mask.empty() || mask[static_cast<std::size_t>(j)]) cols.push_back(j);
  }
  if (static_cast<Index>(cols.size()) < a.rows() + 1) {
    throw Error(ErrorCode::InsufficientOverlap, "fewer than d+1 points to align");
  }
  const SimilarityTransform t =
      similarity_procrustes(a(Eigen::all, cols), b(Eigen::all, cols), false, false);
  return {t.rotation, t.translation};
}

}  // namespace defgpa
