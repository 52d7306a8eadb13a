#include <gtest/gtest.h>

#include "generators.hpp"
#include "oracles.hpp"

namespace defgpa {
namespace {

using testing::Rng;

std::vector<LbwModel> tps(const ShapeSet& set, double theta) {
  TpsOptions o;
  o.theta = theta;
  return tps_models(set, o);
}

TEST(RmseR, ZeroForIdenticalShapes) {
  Rng rng(1);
  const ShapeSet set = testing::full_set(std::vector<Matrix>(3, testing::base_shape(2, 10, rng)));
  const auto models = affine_models(set);
  const GpaSolution s = solve(set, models, estimate_prior(set));
  EXPECT_LT(rmse_r(s, set, models), 1e-8);
  EXPECT_LT(rmse_d(s, set, models), 1e-8);
}

TEST(RmseR, SingleVisiblePointHandValue) {
  // One shape, three points, reference displaced by (3,4) at one point only
  // counts through kappa = 3.
  Matrix d(2, 3);
  d << 0, 1, 0, 0, 0, 1;
  const ShapeSet set({Shape(d)});
  const auto models = affine_models(set);
  GpaSolution s;
  s.reference = d;
  s.reference(0, 2) += 3;
  s.reference(1, 2) += 4;
  Matrix w = Matrix::Zero(3, 2);
  w.topRows(2) = Matrix::Identity(2, 2);
  s.weights = {w};
  EXPECT_NEAR(rmse_r(s, set, models), std::sqrt(25.0 / 3.0), 1e-14);
}

TEST(RmseR, MatchesLoopOracleAndCostIdentity) {
  Rng rng(2);
  const Matrix base = testing::base_shape(2, 16, rng);
  const ShapeSet set = testing::mask_shapes(testing::affine_family(base, 4, rng, 0.4), 0.2, rng, 5);
  const auto models = tps(set, 0.2);
  const GpaSolution s = solve(set, models, estimate_prior(set));
  const double r = rmse_r(s, set, models);
  EXPECT_NEAR(r, testing::loop_rmse_r(set, models, s.reference, s.weights), 1e-12);
  EXPECT_NEAR(r * r * static_cast<double>(set.total_visible()), s.data_cost, 1e-8 * s.data_cost);
}

TEST(RmseD, MatchesExactAffineInverse) {
  Rng rng(3);
  const Matrix base = testing::base_shape(2, 12, rng);
  const ShapeSet set = testing::full_set(testing::affine_family(base, 4, rng, 0.3));
  const auto models = affine_models(set);
  const GpaSolution s = solve(set, models, estimate_prior(set));
  double sum = 0.0;
  for (std::size_t i = 0; i < set.count(); ++i) {
    const Matrix a = s.weights[i].topRows(2).transpose();
    const Vector t = s.weights[i].row(2).transpose();
    const Matrix back = a.inverse() * (s.reference.colwise() - t);
    sum += (set[i].points() - back).squaredNorm();
  }
  EXPECT_NEAR(rmse_d(s, set, models), std::sqrt(sum / 48.0), 1e-10);
}

TEST(RmseD, AgreesWithRmseROnRigidData) {
  Rng rng(4);
  const Matrix base = testing::base_shape(3, 12, rng);
  const ShapeSet set = testing::full_set(testing::rigid_family(base, 3, rng));
  const auto models = affine_models(set);
  const GpaSolution s = solve(set, models, estimate_prior(set));
  EXPECT_NEAR(rmse_d(s, set, models), rmse_r(s, set, models), 1e-8);
}

TEST(RmseD, TpsUsesFittedInverse) {
  Rng rng(5);
  const Matrix base = testing::base_shape(2, 30, rng);
  const ShapeSet set = testing::full_set(testing::affine_family(base, 3, rng, 0.2));
  const auto models = tps(set, 1.0);
  const GpaSolution s = solve(set, models, estimate_prior(set));
  const double d = rmse_d(s, set, models);
  EXPECT_TRUE(std::isfinite(d));
  EXPECT_GT(d, 0.0);
}

TEST(GaugeAlign, IdentityKnownMotionAndRandomCandidates) {
  Rng rng(6);
  const Matrix a = testing::random_matrix(2, 10, rng, 3.0);
  const RigidAlignment same = gauge_align(a, a);
  EXPECT_TRUE(same.rotation.isApprox(Matrix::Identity(2, 2), 1e-12));
  EXPECT_LT(same.translation.norm(), 1e-12);

  const Matrix r = testing::random_rotation(2, rng);
  const Vector t = testing::random_matrix(2, 1, rng);
  const RigidAlignment known = gauge_align(a, (r * a).colwise() + t);
  EXPECT_LT((known.rotation - r).norm(), 1e-10);
  EXPECT_LT((known.translation - t).norm(), 1e-10);

  const Matrix b = ((r * a).colwise() + t) + testing::random_matrix(2, 10, rng, 0.3);
  const RigidAlignment fit = gauge_align(a, b);
  const double best = (fit.apply(a) - b).squaredNorm();
  std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
  for (int k = 0; k < 1000; ++k) {
    const double th = angle(rng);
    Matrix rc(2, 2);
    rc << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
    const Vector tc = Vector(b.rowwise().mean()) - rc * Vector(a.rowwise().mean()) +
                      testing::random_matrix(2, 1, rng, 0.1);
    EXPECT_LE(best, ((rc * a).colwise() + tc - b).squaredNorm() + 1e-12);
  }
  Visibility few(10, false);
  few[0] = few[1] = true;
  EXPECT_THROW(gauge_align(a, b, few), Error);
}

TEST(Folds, ContiguousWithRemainderAndSeededShuffle) {
  CveConfig c;
  c.group_size = 3;
  const auto folds = make_folds(8, c);
  ASSERT_EQ(folds.size(), 3u);
  EXPECT_EQ(folds[2], (std::vector<Index>{6, 7}));
  c.seed = 42;
  const auto a = make_folds(8, c);
  EXPECT_EQ(a, make_folds(8, c));
  c.group_size = 8;
  EXPECT_THROW(make_folds(8, c), Error);
}

TEST(CrossValidation, NoiselessRigidDataIsPredictedExactly) {
  Rng rng(7);
  for (Index d : {2, 3}) {
    const Matrix base = testing::base_shape(d, 14, rng);
    const ShapeSet set = testing::full_set(testing::rigid_family(base, 3, rng));
    const CovariancePrior prior = estimate_prior(set);
    const CveResult a = cross_validation_error(set, affine_models(set), prior, {}, {});
    EXPECT_EQ(a.folds, 14u);
    EXPECT_LT(a.cve, 1e-6);
    CveConfig pairs;
    pairs.group_size = 2;
    EXPECT_LT(cross_validation_error(set, tps(set, 1.0), prior, {}, pairs).cve, 1e-6);
  }
}

TEST(CrossValidation, FixedPriorOptionMatchesOracle) {
  Rng rng(17);
  const Matrix base = testing::base_shape(2, 12, rng);
  const ShapeSet set = testing::full_set(testing::affine_family(base, 4, rng, 0.3));
  const auto models = affine_models(set);
  const CovariancePrior prior = estimate_prior(set);
  CveConfig fixed;
  fixed.reestimate_prior = false;
  const double lib = cross_validation_error(set, models, prior, {}, fixed).cve;
  EXPECT_NEAR(lib, testing::loo_cve_reference(set, models, prior.lambdas(), false), 1e-8);
}

TEST(CrossValidation, MatchesIndependentLeaveOneOutLoop) {
  Rng rng(8);
  for (int trial = 0; trial < 3; ++trial) {
    const Matrix base = testing::base_shape(2, 14, rng);
    const auto shapes = testing::affine_family(base, 4, rng, 0.3);
    const ShapeSet set = trial == 2 ? testing::mask_shapes(shapes, 0.15, rng, 6)
                                    : testing::full_set(shapes);
    const auto models = trial == 0 ? affine_models(set) : tps(set, 0.5);
    const CovariancePrior prior = estimate_prior(set);
    const CveResult r = cross_validation_error(set, models, prior, {}, {});
    EXPECT_NEAR(r.cve, testing::loo_cve_reference(set, models, prior.lambdas()), 1e-8);
  }
}

TEST(CrossValidation, ExtremeFoldSizeRunsAndPredictionsRespectVisibility) {
  Rng rng(9);
  const Matrix base = testing::base_shape(2, 12, rng);
  const ShapeSet set = testing::mask_shapes(testing::affine_family(base, 4, rng, 0.2), 0.1, rng, 9);
  CveConfig c;
  c.group_size = 12 - (2 + 2);
  CveResult r;
  try {
    r = cross_validation_error(set, affine_models(set), estimate_prior(set), {}, c);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InsufficientOverlap);
    return;
  }
  EXPECT_TRUE(std::isfinite(r.cve));
  for (std::size_t i = 0; i < set.count(); ++i) {
    for (Index j = 0; j < 12; ++j) {
      EXPECT_EQ(set[i].visible(j), r.predicted[i].col(j).allFinite());
    }
  }
}

}  // namespace
}  // namespace defgpa
