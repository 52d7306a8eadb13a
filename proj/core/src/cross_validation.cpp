#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "defgpa/error.hpp"
#include "defgpa/metrics.hpp"
#include "defgpa/parallel.hpp"

namespace defgpa {

ShapeSet select_points(const ShapeSet& set, const std::vector<Index>& columns) {
  std::vector<Shape> shapes;
  shapes.reserve(set.count());
  for (const Shape& s : set) {
    Visibility vis;
    vis.reserve(columns.size());
    for (Index j : columns) vis.push_back(s.visible(j));
    shapes.emplace_back(s.points()(Eigen::all, columns), std::move(vis), s.id());
  }
  return ShapeSet(std::move(shapes));
}

std::vector<std::vector<Index>> make_folds(Index m, const CveConfig& config) {
  if (config.group_size < 1 || config.group_size >= m) {
    throw Error(ErrorCode::DimensionError, "group size must lie in [1, m)");
  }
  std::vector<Index> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), Index{0});
  if (config.seed) {
    std::mt19937_64 rng(*config.seed);
    std::shuffle(order.begin(), order.end(), rng);
  }
  std::vector<std::vector<Index>> folds;
  for (std::size_t start = 0; start < order.size();
       start += static_cast<std::size_t>(config.group_size)) {
    const std::size_t stop =
        std::min(order.size(), start + static_cast<std::size_t>(config.group_size));
    std::vector<Index> fold(order.begin() + static_cast<std::ptrdiff_t>(start),
                            order.begin() + static_cast<std::ptrdiff_t>(stop));
    std::sort(fold.begin(), fold.end());
    folds.push_back(std::move(fold));
  }
  return folds;
}

namespace {

struct FoldResult {
  bool skipped = false;
  // Per shape, predicted held-out points aligned into the full reference frame.
  std::vector<Matrix> predicted;
};

}  // namespace

CveResult cross_validation_error(const ShapeSet& set, const std::vector<LbwModel>& models,
                                 const CovariancePrior& prior, const SolveOptions& options,
                                 const CveConfig& config) {
  const Index m = set.points();
  const Index d = set.dim();
  const auto folds = make_folds(m, config);
  if (m - config.group_size < d + 1) {
    throw Error(ErrorCode::InsufficientOverlap, "folds leave fewer than d+1 points");
  }

  const GpaSolution full = solve(set, models, prior, options);

  std::vector<FoldResult> results(folds.size());
  parallel_for(folds.size(), [&](std::size_t f) {
    const std::vector<Index>& fold = folds[f];
    std::vector<Index> kept;
    for (Index j = 0, cursor = 0; j < m; ++j) {
      if (cursor < static_cast<Index>(fold.size()) && fold[static_cast<std::size_t>(cursor)] == j) {
        ++cursor;
      } else {
        kept.push_back(j);
      }
    }
    ShapeSet reduced;
    try {
      reduced = select_points(set, kept);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::UnconstrainedPoint) throw;
      results[f].skipped = true;
      return;
    }
    const GpaSolution local =
        solve(reduced, models, config.reestimate_prior ? estimate_prior(reduced) : prior, options);
    const RigidAlignment gauge =
        gauge_align(local.reference, Matrix(full.reference(Eigen::all, kept)));
    FoldResult& out = results[f];
    for (std::size_t i = 0; i < set.count(); ++i) {
      const Matrix held = set[i].points()(Eigen::all, fold);
      Matrix pred = gauge.apply(local.weights[i].transpose() * models[i].features(held.unaryExpr(
                                    [](double v) { return std::isfinite(v) ? v : 0.0; })));
      for (std::size_t c = 0; c < fold.size(); ++c) {
        if (!set[i].visible(fold[c])) {
          pred.col(static_cast<Index>(c)).setConstant(std::numeric_limits<double>::quiet_NaN());
        }
      }
      out.predicted.push_back(std::move(pred));
    }
  });

  CveResult result;
  result.folds = folds.size();
  result.reference = full.reference;
  result.predicted.assign(set.count(),
                          Matrix::Constant(d, m, std::numeric_limits<double>::quiet_NaN()));
  double sum = 0.0;
  Index kappa = 0;
  for (std::size_t f = 0; f < folds.size(); ++f) {
    if (results[f].skipped) {
      result.skipped_folds.push_back(f);
      continue;
    }
    for (std::size_t i = 0; i < set.count(); ++i) {
      for (std::size_t c = 0; c < folds[f].size(); ++c) {
        const Index j = folds[f][c];
        if (!set[i].visible(j)) continue;
        const Vector p = results[f].predicted[i].col(static_cast<Index>(c));
        result.predicted[i].col(j) = p;
        sum += (p - full.reference.col(j)).squaredNorm();
        ++kappa;
      }
    }
  }
  result.cve = kappa > 0 ? std::sqrt(sum / static_cast<double>(kappa)) : 0.0;
  return result;
}

}  // namespace defgpa
