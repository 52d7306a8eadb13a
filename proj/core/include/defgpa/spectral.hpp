#pragma once

#include "defgpa/types.hpp"

namespace defgpa {

/// Full symmetric eigendecomposition, eigenvalues ascending.
/// Column j of `vectors` pairs with `values[j]`; each column has its
/// largest-magnitude entry made positive (lowest index wins ties).
struct EigenPairs {
  Vector values;
  Matrix vectors;
};

/// Symmetric eigendecomposition. Rejects non-finite input and inputs whose
/// asymmetry exceeds 1e-8 relative to the largest entry (InvalidMatrix);
/// otherwise decomposes (A + A^T) / 2.
EigenPairs eig_sym(const Matrix& a);

/// Minimiser of tr(S P S^T) subject to S S^T = diag(lambdas): the d bottom
/// eigenvectors of P scaled by sqrt(lambdas), the largest lambda paired with
/// the smallest eigenvalue. Returns a d x m matrix.
Matrix bottom_d_scaled(const Matrix& p, const CovariancePrior& prior);

/// As above, but eigenvectors whose eigenvalues agree within 1e-9 of the
/// spectral radius are rotated to diagonalise `tie_metric` (m x m, symmetric),
/// larger metric values taking the larger lambdas.
Matrix bottom_d_scaled(const Matrix& p, const CovariancePrior& prior, const Matrix& tie_metric);

/// The d top eigenvectors of Q (descending) after removing the known
/// eigenvector u from the candidate set. Deflates Q - c*uu^T with
/// c = alpha_max - alpha_min + 1 so that u drops below the spectrum.
Matrix top_d_excluding(const Matrix& q, Index d, const Vector& u);

/// Unit vector maximising ||M^T theta||. Chosen entrywise non-negative when
/// the singular vector allows it.
Vector leftmost_singular_vector(const Matrix& m);

/// Cosines of the principal angles between the column spaces of A and B,
/// descending. Both inputs are orthonormalised first.
Vector principal_angle_cosines(const Matrix& a, const Matrix& b);

/// Sine of the largest principal angle between the row spaces of two d x m
/// matrices. Zero iff they span the same subspace.
double row_subspace_distance(const Matrix& a, const Matrix& b);

/// Enforces the eigenvector sign convention on a single vector in place.
void canonicalize_sign(Eigen::Ref<Vector> v);

}  // namespace defgpa
