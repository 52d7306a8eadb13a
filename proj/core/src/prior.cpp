#include <algorithm>
#include <cmath>
#include <functional>

#include "defgpa/error.hpp"
#include "defgpa/gpa.hpp"
#include "defgpa/spectral.hpp"

namespace defgpa {

CovariancePrior::CovariancePrior(Vector lambdas) : lambdas_(std::move(lambdas)) {
  if (lambdas_.size() < 1) throw Error(ErrorCode::DegenerateInput, "prior needs d >= 1 values");
  for (Index k = 0; k < lambdas_.size(); ++k) {
    if (!std::isfinite(lambdas_(k)) || lambdas_(k) < 0.0) {
      throw Error(ErrorCode::DegenerateInput, "prior values must be finite and >= 0");
    }
    if (k > 0 && lambdas_(k) > lambdas_(k - 1)) {
      throw Error(ErrorCode::DegenerateInput, "prior values must be non-ascending");
    }
  }
}

CovariancePrior estimate_prior(const std::vector<Matrix>& full_shapes) {
  if (full_shapes.empty()) throw Error(ErrorCode::DegenerateInput, "no shapes");
  const Index d = full_shapes.front().rows();
  Matrix pi(d, static_cast<Index>(full_shapes.size()));
  double scale_sum = 0.0;
  for (std::size_t i = 0; i < full_shapes.size(); ++i) {
    const Matrix& shape = full_shapes[i];
    if (shape.rows() != d) throw Error(ErrorCode::DimensionError, "shapes differ in d");
    if (!shape.allFinite()) throw Error(ErrorCode::InvalidMatrix, "shape is not full");
    Vector sigma = Vector::Zero(d);
    const Index r = std::min(d, shape.cols());
    sigma.head(r) = center(shape).jacobiSvd().singularValues().head(r);
    const double norm = sigma.norm();
    if (!(norm > 0.0)) throw Error(ErrorCode::DegenerateInput, "shape has zero scale");
    pi.col(static_cast<Index>(i)) = sigma / norm;
    scale_sum += norm;
  }
  const Vector theta = leftmost_singular_vector(pi);
  const double s = scale_sum / static_cast<double>(full_shapes.size());
  Vector lambdas = (s * theta).array().square();
  std::sort(lambdas.data(), lambdas.data() + d, std::greater<>());
  return CovariancePrior(std::move(lambdas));
}

CovariancePrior estimate_prior(const ShapeSet& set, bool allow_reflection) {
  return estimate_prior(complete_shapes(set, allow_reflection));
}

}  // namespace defgpa
