#pragma once

#include <cstddef>
#include <vector>

#include "defgpa/shapes.hpp"
#include "defgpa/warps.hpp"

namespace defgpa::detail {

/// The regularised least-squares problem of one shape,
///   min_W ||(W^T B - S) Gamma||_F^2 + mu ||Z W||_F^2,
/// factored once through a QR of the stacked matrix [Gamma B^T; sqrt(mu) Z].
class ShapeSystem {
 public:
  /// SingularSystemError (tagged with `index`) when the normal matrix is
  /// singular even after one diagonal-jitter retry.
  ShapeSystem(const Shape& shape, const LbwModel& model, std::size_t index);

  /// P_i = Gamma - Gamma B^T N^{-1} B Gamma as a full m x m matrix.
  Matrix projector() const;
  /// Optimal l x d weights for a d x m reference.
  Matrix solve(const Matrix& reference) const;
  /// Feature matrix of the visible points (l x m_v).
  const Matrix& visible_features() const noexcept { return features_; }
  const std::vector<Index>& visible() const noexcept { return visible_; }
  bool jittered() const noexcept { return jittered_; }

 private:
  Index points_;
  std::vector<Index> visible_;
  Matrix features_;
  Matrix stacked_;
  Eigen::ColPivHouseholderQR<Matrix> qr_;
  Matrix q_visible_;
  bool jittered_ = false;
};

}  // namespace defgpa::detail
