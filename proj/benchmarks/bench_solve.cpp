#include <benchmark/benchmark.h>

#include <random>

#include "defgpa/defgpa.hpp"

namespace {

using defgpa::Index;
using defgpa::Matrix;

defgpa::ShapeSet make_set(Index d, Index m, Index n) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix base(d, m);
  for (Index j = 0; j < m; ++j) {
    for (Index r = 0; r < d; ++r) base(r, j) = g(rng) * (10.0 - 3.0 * static_cast<double>(r));
  }
  std::vector<defgpa::Shape> shapes;
  for (Index i = 0; i < n; ++i) {
    Matrix a = Matrix::Identity(d, d);
    for (Index r = 0; r < d; ++r) {
      for (Index c = 0; c < d; ++c) a(r, c) += 0.2 * g(rng);
    }
    Matrix s = a * base;
    for (Index j = 0; j < m; ++j) {
      for (Index r = 0; r < d; ++r) s(r, j) += 0.1 * g(rng);
    }
    shapes.emplace_back(std::move(s));
  }
  return defgpa::ShapeSet(std::move(shapes));
}

void BM_SolveAffine(benchmark::State& state) {
  const auto set = make_set(3, state.range(0), 10);
  const auto models = defgpa::affine_models(set);
  const auto prior = defgpa::estimate_prior(set);
  for (auto _ : state) benchmark::DoNotOptimize(defgpa::solve(set, models, prior));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SolveAffine)->RangeMultiplier(2)->Range(64, 1024)->Complexity();

void BM_SolveTps(benchmark::State& state) {
  const auto set = make_set(3, 500, 10);
  defgpa::TpsOptions opts;
  opts.per_axis = state.range(0);
  const auto models = defgpa::tps_models(set, opts);
  const auto prior = defgpa::estimate_prior(set);
  for (auto _ : state) benchmark::DoNotOptimize(defgpa::solve(set, models, prior));
}
BENCHMARK(BM_SolveTps)->DenseRange(2, 5);

void BM_Cve(benchmark::State& state) {
  const auto set = make_set(2, 100, 5);
  const auto models = defgpa::affine_models(set);
  const auto prior = defgpa::estimate_prior(set);
  defgpa::CveConfig cfg;
  cfg.group_size = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(defgpa::cross_validation_error(set, models, prior, {}, cfg));
  }
}
BENCHMARK(BM_Cve)->Arg(1)->Arg(10);

}  // namespace

BENCHMARK_MAIN();
