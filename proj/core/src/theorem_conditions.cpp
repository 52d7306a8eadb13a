#include <random>

#include "defgpa/gpa.hpp"
#include "least_squares.hpp"

namespace defgpa {

std::vector<bool> TheoremReport::verdicts() const {
  bool projectors = true;
  bool witnesses = true;
  for (const ShapeConditions& s : shapes) {
    projectors = projectors && s.projector_residual < tolerance;
    witnesses = witnesses && s.witness_found;
  }
  const bool aggregate = aggregate_residual < tolerance;
  if (!full) return {aggregate, projectors, witnesses};
  return {aggregate, q_residual < tolerance, projectors, translation_residual < tolerance,
          witnesses};
}

bool TheoremReport::all_pass() const {
  for (bool v : verdicts()) {
    if (!v) return false;
  }
  return true;
}

bool TheoremReport::all_fail() const {
  for (bool v : verdicts()) {
    if (v) return false;
  }
  return true;
}

TheoremReport check_theorem_conditions(const ShapeSet& set, const std::vector<LbwModel>& models) {
  const Index m = set.points();
  const Index d = set.dim();
  const double n = static_cast<double>(set.count());
  const Vector ones = Vector::Ones(m);

  TheoremReport report;
  report.full = set.all_full();
  Matrix p = Matrix::Zero(m, m);
  for (std::size_t i = 0; i < set.count(); ++i) {
    const detail::ShapeSystem system(set[i], models[i], i);
    const Matrix pi = system.projector();
    ShapeConditions c;
    c.projector_residual = (pi * ones).lpNorm<Eigen::Infinity>();
    c.witness_found = free_translation_witness(models[i], set[i].visible_points()).has_value();
    report.shapes.push_back(c);
    p += pi;
  }
  report.aggregate_residual = (p * ones).lpNorm<Eigen::Infinity>();
  if (report.full) {
    const Matrix q = n * Matrix::Identity(m, m) - p;
    report.q_residual = (q * ones - n * ones).lpNorm<Eigen::Infinity>();

    std::mt19937_64 rng(0);
    std::normal_distribution<double> normal;
    Matrix s(d, m);
    for (Index k = 0; k < s.size(); ++k) s(k) = normal(rng);
    s /= s.norm();
    const double base = (s * p * s.transpose()).trace();
    double worst = 0.0;
    for (Index k = 0; k < d; ++k) {
      Matrix shifted = s;
      shifted.row(k).array() += 1.0;
      worst = std::max(worst, std::abs((shifted * p * shifted.transpose()).trace() - base));
    }
    report.translation_residual = worst / (n * static_cast<double>(m));
  }
  return report;
}

}  // namespace defgpa
