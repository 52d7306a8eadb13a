#include <gtest/gtest.h>

#include "generators.hpp"
#include "oracles.hpp"

namespace defgpa {
namespace {

using testing::Rng;

Matrix diag3(double a, double b, double c) {
  Vector v(3);
  v << a, b, c;
  return v.asDiagonal();
}

TEST(EigSym, IdentityGivesUnitValuesAndOrthonormalBasis) {
  const EigenPairs e = eig_sym(Matrix::Identity(3, 3));
  EXPECT_TRUE(e.values.isApprox(Vector::Ones(3)));
  EXPECT_TRUE((e.vectors.transpose() * e.vectors).isApprox(Matrix::Identity(3, 3), 1e-12));
}

TEST(EigSym, DiagonalIsSortedAscending) {
  const EigenPairs e = eig_sym(diag3(3, 1, 2));
  EXPECT_NEAR(e.values(0), 1.0, 1e-15);
  EXPECT_NEAR(e.values(1), 2.0, 1e-15);
  EXPECT_NEAR(e.values(2), 3.0, 1e-15);
  EXPECT_TRUE(e.vectors.col(0).isApprox(Vector::Unit(3, 1)));
  EXPECT_TRUE(e.vectors.col(1).isApprox(Vector::Unit(3, 2)));
  EXPECT_TRUE(e.vectors.col(2).isApprox(Vector::Unit(3, 0)));
}

TEST(EigSym, MatchesJacobiOracleOnRandomMatrix) {
  Rng rng(7);
  const Matrix a = testing::random_symmetric(6, rng);
  const EigenPairs e = eig_sym(a);
  const EigenPairs ref = testing::jacobi_eigen(a);
  for (Index k = 0; k < 6; ++k) {
    EXPECT_LT((a * e.vectors.col(k) - e.values(k) * e.vectors.col(k)).norm(), 1e-8 * a.norm());
    EXPECT_NEAR(e.values(k), ref.values(k), 1e-10);
    EXPECT_NEAR(std::abs(e.vectors.col(k).dot(ref.vectors.col(k))), 1.0, 1e-8);
  }
}

TEST(EigSym, SignConventionMakesLargestEntryPositive) {
  Rng rng(8);
  const EigenPairs e = eig_sym(testing::random_symmetric(5, rng));
  for (Index k = 0; k < 5; ++k) {
    Index arg = 0;
    e.vectors.col(k).cwiseAbs().maxCoeff(&arg);
    EXPECT_GT(e.vectors(arg, k), 0.0);
  }
}

TEST(EigSym, RejectsNonFiniteAndAsymmetricInput) {
  Matrix a = Matrix::Identity(2, 2);
  a(0, 1) = std::numeric_limits<double>::quiet_NaN();
  try {
    eig_sym(a);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidMatrix);
  }
  Matrix b = Matrix::Identity(2, 2);
  b(0, 1) = 1e-3;
  EXPECT_THROW(eig_sym(b), Error);
  Matrix c = Matrix::Identity(2, 2);
  c(0, 1) = 1e-14;
  EXPECT_NO_THROW(eig_sym(c));
}

TEST(BottomDScaled, DiagonalSpectrumSingleRow) {
  const Matrix s = bottom_d_scaled(diag3(0, 1, 2), CovariancePrior(Vector::Constant(1, 4.0)));
  ASSERT_EQ(s.rows(), 1);
  EXPECT_NEAR(std::abs(s(0, 0)), 2.0, 1e-14);
  EXPECT_NEAR(s(0, 1), 0.0, 1e-14);
  EXPECT_NEAR(s(0, 2), 0.0, 1e-14);
}

TEST(BottomDScaled, RowsSpanBottomEigenspaceWithPriorNorms) {
  Vector lambdas(2);
  lambdas << 9, 4;
  const Matrix s = bottom_d_scaled(diag3(0, 0, 5), CovariancePrior(lambdas));
  EXPECT_NEAR(s.row(0).norm(), 3.0, 1e-12);
  EXPECT_NEAR(s.row(1).norm(), 2.0, 1e-12);
  EXPECT_NEAR(s.col(2).norm(), 0.0, 1e-12);
}

TEST(BottomDScaled, BeatsEveryOtherEigenvectorSubset) {
  Rng rng(9);
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix p = testing::random_symmetric(8, rng);
    Vector lambdas(2);
    lambdas << 3.0, 1.0;
    const Matrix s = bottom_d_scaled(p, CovariancePrior(lambdas));
    const double cost = (s * p * s.transpose()).trace();
    EXPECT_NEAR(cost, testing::brockett_subset_minimum(p, lambdas), 1e-9);
    EXPECT_LT((s * s.transpose() - Matrix(lambdas.asDiagonal())).norm(), 1e-9 * lambdas.sum());
  }
}

TEST(BottomDScaled, RejectsTooManyRows) {
  EXPECT_THROW(bottom_d_scaled(Matrix::Identity(2, 2), CovariancePrior(Vector::Ones(3))), Error);
}

TEST(BottomDScaled, TiesAreResolvedByTheMetric) {
  // Eigenvalue 0 twice on e0, e1; the metric prefers e1.
  const Matrix p = Vector((Vector(4) << 0.0, 0.0, 2.0, 3.0).finished()).asDiagonal();
  const Matrix metric = Vector((Vector(4) << 1.0, 5.0, 0.0, 0.0).finished()).asDiagonal();
  const CovariancePrior prior(Vector((Vector(2) << 4.0, 1.0).finished()));
  const Matrix s = bottom_d_scaled(p, prior, metric);
  Matrix expected = Matrix::Zero(2, 4);
  expected(0, 1) = 2.0;
  expected(1, 0) = 1.0;
  EXPECT_LT((s - expected).norm(), 1e-12);

  Rng rng(31);
  const Matrix q = testing::random_rotation(4, rng);
  const Matrix s2 = bottom_d_scaled(q * p * q.transpose(), prior, q * metric * q.transpose());
  EXPECT_LT(row_subspace_distance(s2.row(0), expected.row(0) * q.transpose()), 1e-8);

  const Matrix gapped = Vector((Vector(4) << 0.0, 1.0, 2.0, 3.0).finished()).asDiagonal();
  EXPECT_LT((bottom_d_scaled(gapped, prior, metric) - bottom_d_scaled(gapped, prior)).norm(), 1e-14);
}

TEST(TopDExcluding, SkipsTheKnownEigenvector) {
  const Matrix x = top_d_excluding(diag3(5, 4, 3), 1, Vector::Unit(3, 0));
  EXPECT_NEAR(std::abs(x(1, 0)), 1.0, 1e-12);
}

TEST(TopDExcluding, OnesMatrixLeavesTheDifferenceVector) {
  const Matrix x = top_d_excluding(Matrix::Ones(2, 2), 1, Vector::Ones(2));
  EXPECT_NEAR(std::abs(x(0, 0)), std::sqrt(0.5), 1e-12);
  EXPECT_NEAR(x(0, 0), -x(1, 0), 1e-12);
}

TEST(TopDExcluding, RecoversConstructedSpectrum) {
  Rng rng(10);
  const Matrix v = testing::random_rotation(6, rng);
  Vector alpha(6);
  alpha << 9, 7, 5, 3, 2, 1;
  const Matrix q = v * alpha.asDiagonal() * v.transpose();
  const Matrix x = top_d_excluding(q, 2, v.col(1));
  EXPECT_LT((x.transpose() * v.col(1)).norm(), 1e-8);
  Matrix expected(6, 2);
  expected << v.col(0), v.col(2);
  EXPECT_GT(principal_angle_cosines(x, expected).minCoeff(), 1.0 - 1e-10);
  EXPECT_TRUE((x.transpose() * x).isApprox(Matrix::Identity(2, 2), 1e-10));
}

TEST(TopDExcluding, ValidatesInputs) {
  try {
    top_d_excluding(diag3(5, 4, 3), 1, Vector::Ones(3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotAnEigenvector);
  }
  try {
    top_d_excluding(diag3(5, 4, 3), 3, Vector::Unit(3, 0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimensionError);
  }
}

TEST(LeftmostSingularVector, IdenticalColumns) {
  Vector v(3);
  v << 1, 2, 2;
  const Matrix m = v.replicate(1, 4);
  EXPECT_TRUE(leftmost_singular_vector(m).isApprox(v / 3.0, 1e-12));
}

TEST(LeftmostSingularVector, DiagonalPicksFirstAxis) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 3;
  m(1, 1) = 1;
  EXPECT_TRUE(leftmost_singular_vector(m).isApprox(Vector::Unit(2, 0), 1e-12));
}

TEST(LeftmostSingularVector, MatchesPowerIterationAndIsNonNegative) {
  Rng rng(11);
  for (int trial = 0; trial < 5; ++trial) {
    const Matrix m = testing::random_matrix(3, 5, rng).cwiseAbs();
    const Vector theta = leftmost_singular_vector(m);
    Vector ref = testing::power_iteration(m * m.transpose());
    if (ref.sum() < 0) ref = -ref;
    EXPECT_LT((theta - ref).norm(), 1e-8);
    EXPECT_GE(theta.minCoeff(), 0.0);
  }
}

TEST(LeftmostSingularVector, ZeroMatrixIsDegenerate) {
  try {
    leftmost_singular_vector(Matrix::Zero(2, 3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegenerateInput);
  }
}

TEST(RowSubspaceDistance, ZeroForSameRowSpaceOneForOrthogonal) {
  Rng rng(12);
  const Matrix a = testing::random_matrix(2, 7, rng);
  const Matrix mix = testing::random_matrix(2, 2, rng);
  EXPECT_LT(row_subspace_distance(a, mix * a), 1e-10);
  Matrix e1 = Matrix::Zero(1, 3);
  Matrix e2 = Matrix::Zero(1, 3);
  e1(0, 0) = 1;
  e2(0, 1) = 1;
  EXPECT_NEAR(row_subspace_distance(e1, e2), 1.0, 1e-12);
}

}  // namespace
}  // namespace defgpa
