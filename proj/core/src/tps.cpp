#include "defgpa/tps.hpp"

#include <algorithm>
#include <cmath>

#include "defgpa/error.hpp"
#include "defgpa/spectral.hpp"

namespace defgpa {

namespace {

constexpr double kConditionFloor = 1e-14;

void check_dimension(Index dim) {
  if (dim != 2 && dim != 3) throw Error(ErrorCode::DimensionError, "TPS supports d = 2 or 3");
}

Matrix psd_sqrt(const Matrix& a) {
  EigenPairs eig = eig_sym(a);
  const double top = std::max(eig.values.cwiseAbs().maxCoeff(), 0.0);
  Vector roots(eig.values.size());
  for (Index k = 0; k < roots.size(); ++k) {
    roots(k) = eig.values(k) > 1e-12 * top ? std::sqrt(eig.values(k)) : 0.0;
  }
  return eig.vectors * roots.asDiagonal() * eig.vectors.transpose();
}

}  // namespace

double tps_kernel(double r, Index dim) {
  check_dimension(dim);
  if (dim == 3) return -r;
  if (r == 0.0) return 0.0;
  const double r2 = r * r;
  return r2 * std::log(r2);
}

TpsModel::TpsModel(Matrix centers, double lambda) : centers_(std::move(centers)), lambda_(lambda) {
  const Index d = centers_.rows();
  const Index l = centers_.cols();
  check_dimension(d);
  if (!(lambda_ >= 0.0) || !std::isfinite(lambda_)) {
    throw Error(ErrorCode::DegenerateCenters, "internal smoothing must be finite and >= 0");
  }
  if (l < d + 2) throw Error(ErrorCode::DegenerateCenters, "TPS needs at least d+2 centres");
  if (!centers_.allFinite()) throw Error(ErrorCode::DegenerateCenters, "non-finite centre");

  lifted_ = affine_basis(centers_);
  Eigen::ColPivHouseholderQR<Matrix> lifted_qr(lifted_.transpose());
  lifted_qr.setThreshold(1e-10);
  if (lifted_qr.rank() < d + 1) {
    throw Error(ErrorCode::DegenerateCenters, "centres are not in general position");
  }

  kernel_ = kernel_features(centers_);
  kernel_.diagonal().array() += lambda_;

  // The first l columns of the inverse of [K C^T; C 0] are E_lambda.
  const Index b = l + d + 1;
  Matrix bordered = Matrix::Zero(b, b);
  bordered.topLeftCorner(l, l) = kernel_;
  bordered.topRightCorner(l, d + 1) = lifted_.transpose();
  bordered.bottomLeftCorner(d + 1, l) = lifted_;
  Eigen::PartialPivLU<Matrix> lu(bordered);
  if (!(lu.rcond() > kConditionFloor)) {
    throw Error(ErrorCode::DegenerateCenters, "TPS system is numerically singular");
  }
  recovery_ = lu.solve(Matrix::Identity(b, l));
  bending_ = recovery_.topRows(l);
  bending_ = 0.5 * (bending_ + bending_.transpose()).eval();
  sqrt_bending_ = psd_sqrt(bending_);
}

Matrix TpsModel::kernel_features(const Matrix& points) const {
  const Index d = dimension();
  if (points.rows() != d) {
    throw Error(ErrorCode::DimensionError, "point dimension does not match the TPS centres");
  }
  Matrix out(centers_.cols(), points.cols());
  for (Index j = 0; j < points.cols(); ++j) {
    for (Index k = 0; k < centers_.cols(); ++k) {
      out(k, j) = tps_kernel((points.col(j) - centers_.col(k)).norm(), d);
    }
  }
  return out;
}

Matrix TpsModel::features(const Matrix& points) const {
  const Index l = centers_.cols();
  Matrix stacked(l + dimension() + 1, points.cols());
  stacked.topRows(l) = kernel_features(points);
  stacked.bottomRows(dimension() + 1) = affine_basis(points);
  return recovery_.transpose() * stacked;
}

Matrix TpsModel::coefficients(const Matrix& weights) const {
  if (weights.rows() != feature_dim()) {
    throw Error(ErrorCode::DimensionError, "TPS weights must have l rows");
  }
  return recovery_ * weights;
}

TpsModel tps_build(const Matrix& centers, double lambda) { return TpsModel(centers, lambda); }

Matrix tps_basis(const TpsModel& model, const Matrix& points) { return model.features(points); }

double bending_energy(const TpsModel& model, const Matrix& weights) {
  if (weights.rows() != model.feature_dim()) {
    throw Error(ErrorCode::DimensionError, "TPS weights must have l rows");
  }
  return std::max(0.0, (weights.transpose() * model.bending() * weights).trace());
}

std::pair<TpsModel, Matrix> fit_inverse_tps(const TpsModel& model, const Matrix& weights,
                                            double lambda) {
  const Matrix images = weights.transpose() * model.features(model.centers());
  TpsModel inverse(images, lambda);
  return {std::move(inverse), model.centers().transpose()};
}

double default_internal_smoothing(const Matrix& centers) {
  const Index d = centers.rows();
  const Index l = centers.cols();
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(l * (l - 1) / 2));
  for (Index a = 0; a < l; ++a) {
    for (Index b = a + 1; b < l; ++b) {
      values.push_back(std::abs(tps_kernel((centers.col(a) - centers.col(b)).norm(), d)));
    }
  }
  if (values.empty()) return 0.0;
  auto mid = values.begin() + static_cast<std::ptrdiff_t>(values.size() / 2);
  std::nth_element(values.begin(), mid, values.end());
  return 1e-8 * *mid;
}

std::vector<LbwModel> tps_models(const ShapeSet& set, const TpsOptions& options) {
  std::vector<LbwModel> models;
  models.reserve(set.count());
  for (const Shape& shape : set) {
    Matrix centers = place_control_points(shape, options.per_axis, options.flat_axes);
    const double lambda =
        options.lambda < 0.0 ? default_internal_smoothing(centers) : options.lambda;
    auto basis = std::make_shared<const TpsModel>(std::move(centers), lambda);
    const double mu = static_cast<double>(shape.visible_count()) * options.theta;
    models.push_back(LbwModel{std::move(basis), mu});
  }
  return models;
}

}  // namespace defgpa
