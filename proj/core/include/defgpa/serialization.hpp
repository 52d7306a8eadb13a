#pragma once

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "defgpa/gpa.hpp"
#include "defgpa/tps.hpp"

namespace defgpa {

using OrderedJson = nlohmann::ordered_json;

/// Rows of the matrix as nested arrays.
OrderedJson matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j);

/// {"kind":"affine","dim":d,"smoothing":mu} or, for TPS, also the centres
/// (as points) and the internal smoothing. Derived TPS matrices are rebuilt
/// on load.
OrderedJson model_to_json(const LbwModel& model);
LbwModel model_from_json(const nlohmann::json& j);

OrderedJson report_to_json(const TheoremReport& report);

struct MetricsRow {
  std::string method;
  double rmse_r = 0.0;
  double rmse_d = 0.0;
  double cve = 0.0;
  double wall_time_seconds = 0.0;
};

OrderedJson metrics_to_json(const MetricsRow& row);
std::string metrics_csv_header();
std::string metrics_csv_row(const MetricsRow& row);

/// Reference (as m points), weights, prior, nu, per-shape smoothing, model
/// descriptors, cost terms and, when given, the theorem report.
OrderedJson solution_to_json(const GpaSolution& solution, const std::vector<LbwModel>& models,
                             const TheoremReport* report = nullptr);
GpaSolution solution_from_json(const nlohmann::json& j);
std::vector<LbwModel> models_from_solution_json(const nlohmann::json& j);

}  // namespace defgpa
