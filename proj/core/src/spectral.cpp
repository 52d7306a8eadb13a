#include "defgpa/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "defgpa/error.hpp"

namespace defgpa {

namespace {

constexpr double kAsymmetryTolerance = 1e-8;
constexpr double kEigenvectorTolerance = 1e-6;
constexpr double kTieTolerance = 1e-9;

Matrix orthonormal_columns(const Matrix& a) {
  Eigen::HouseholderQR<Matrix> qr(a);
  return qr.householderQ() * Matrix::Identity(a.rows(), a.cols());
}

}  // namespace

void canonicalize_sign(Eigen::Ref<Vector> v) {
  Index best = 0;
  double best_abs = -1.0;
  for (Index i = 0; i < v.size(); ++i) {
    const double a = std::abs(v[i]);
    if (a > best_abs) {
      best_abs = a;
      best = i;
    }
  }
  if (v.size() > 0 && v[best] < 0.0) v = -v;
}

EigenPairs eig_sym(const Matrix& a) {
  if (a.rows() != a.cols()) {
    throw Error(ErrorCode::DimensionError, "eig_sym expects a square matrix");
  }
  if (!a.allFinite()) {
    throw Error(ErrorCode::InvalidMatrix, "matrix has non-finite entries");
  }
  const double scale = a.size() > 0 ? a.cwiseAbs().maxCoeff() : 0.0;
  const double asym = a.size() > 0 ? (a - a.transpose()).cwiseAbs().maxCoeff() : 0.0;
  if (asym > kAsymmetryTolerance * scale) {
    throw Error(ErrorCode::InvalidMatrix,
                "matrix is not symmetric (asymmetry " + std::to_string(asym) + ")");
  }

  const Matrix sym = 0.5 * (a + a.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::InvalidMatrix, "symmetric eigensolver did not converge");
  }
  EigenPairs out{solver.eigenvalues(), solver.eigenvectors()};
  for (Index j = 0; j < out.vectors.cols(); ++j) canonicalize_sign(out.vectors.col(j));
  return out;
}

Matrix bottom_d_scaled(const Matrix& p, const CovariancePrior& prior) {
  const Index d = prior.dim();
  if (d > p.rows()) {
    throw Error(ErrorCode::DimensionError, "prior dimension exceeds matrix size");
  }
  const EigenPairs eig = eig_sym(p);
  const Vector root = prior.lambdas().cwiseSqrt();
  return root.asDiagonal() * eig.vectors.leftCols(d).transpose();
}

Matrix bottom_d_scaled(const Matrix& p, const CovariancePrior& prior, const Matrix& tie_metric) {
  const Index d = prior.dim();
  if (d > p.rows()) {
    throw Error(ErrorCode::DimensionError, "prior dimension exceeds matrix size");
  }
  if (tie_metric.rows() != p.rows() || tie_metric.cols() != p.cols()) {
    throw Error(ErrorCode::DimensionError, "tie metric must match P");
  }
  EigenPairs eig = eig_sym(p);
  const Index m = p.rows();
  const double tol = kTieTolerance * std::max(eig.values.cwiseAbs().maxCoeff(), 1e-300);
  for (Index start = 0; start < d;) {
    Index stop = start + 1;
    while (stop < m && eig.values(stop) - eig.values(stop - 1) <= tol) ++stop;
    if (stop - start > 1) {
      const Matrix block = eig.vectors.middleCols(start, stop - start);
      const EigenPairs inner = eig_sym(block.transpose() * tie_metric * block);
      Matrix rotated = block * inner.vectors.rowwise().reverse();
      for (Index j = 0; j < rotated.cols(); ++j) canonicalize_sign(rotated.col(j));
      eig.vectors.middleCols(start, stop - start) = rotated;
    }
    start = stop;
  }
  const Vector root = prior.lambdas().cwiseSqrt();
  return root.asDiagonal() * eig.vectors.leftCols(d).transpose();
}

Matrix top_d_excluding(const Matrix& q, Index d, const Vector& u) {
  const Index m = q.rows();
  if (d >= m) {
    throw Error(ErrorCode::DimensionError, "need d < m to exclude one eigenvector");
  }
  if (u.size() != m) {
    throw Error(ErrorCode::DimensionError, "excluded vector has the wrong length");
  }
  const double unorm = u.norm();
  if (!(unorm > 0.0)) {
    throw Error(ErrorCode::NotAnEigenvector, "excluded vector is zero");
  }
  const Vector uhat = u / unorm;
  const Vector qu = q * uhat;
  const double alpha = uhat.dot(qu);
  const double qnorm = std::max(q.norm(), 1e-300);
  if ((qu - alpha * uhat).norm() > kEigenvectorTolerance * qnorm) {
    throw Error(ErrorCode::NotAnEigenvector, "u is not an eigenvector of Q");
  }

  const EigenPairs spectrum = eig_sym(q);
  const double c = spectrum.values(m - 1) - spectrum.values(0) + 1.0;
  Matrix deflated = q - c * uhat * uhat.transpose();
  deflated = 0.5 * (deflated + deflated.transpose());
  const EigenPairs eig = eig_sym(deflated);

  Matrix x(m, d);
  for (Index k = 0; k < d; ++k) x.col(k) = eig.vectors.col(m - 1 - k);
  return x;
}

Vector leftmost_singular_vector(const Matrix& m) {
  if (m.size() == 0 || !m.allFinite() || m.cwiseAbs().maxCoeff() == 0.0) {
    throw Error(ErrorCode::DegenerateInput, "matrix has no non-zero column");
  }
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU);
  Vector v = svd.matrixU().col(0);
  const double tol = 1e-12;
  if ((v.array() <= tol).all()) {
    v = -v;
  } else if (!(v.array() >= -tol).all()) {
    canonicalize_sign(v);
  }
  if ((v.array() >= -tol).all()) v = v.cwiseMax(0.0);
  return v / v.norm();
}

Vector principal_angle_cosines(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) {
    throw Error(ErrorCode::DimensionError, "subspaces live in different ambient spaces");
  }
  const Matrix qa = orthonormal_columns(a);
  const Matrix qb = orthonormal_columns(b);
  Eigen::JacobiSVD<Matrix> svd(qa.transpose() * qb);
  return svd.singularValues().cwiseMin(1.0);
}

double row_subspace_distance(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::DimensionError, "row subspaces must have matching shapes");
  }
  const Matrix qa = orthonormal_columns(a.transpose());
  const Matrix qb = orthonormal_columns(b.transpose());
  // sin of the largest principal angle = ||(I - Qa Qa^T) Qb||_2
  const Matrix residual = qb - qa * (qa.transpose() * qb);
  Eigen::JacobiSVD<Matrix> svd(residual);
  return svd.singularValues().size() > 0 ? svd.singularValues()(0) : 0.0;
}

}  // namespace defgpa
