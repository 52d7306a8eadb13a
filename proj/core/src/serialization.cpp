#include "defgpa/serialization.hpp"

#include <cmath>
#include <limits>
#include <memory>

#include "defgpa/error.hpp"
#include "defgpa/shape_io.hpp"

namespace defgpa {

namespace {

using nlohmann::json;

// NaN and infinities have no JSON spelling; they are written as null.
OrderedJson number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

double number_from(const json& j) {
  return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

}  // namespace

OrderedJson matrix_to_json(const Matrix& m) {
  OrderedJson rows = OrderedJson::array();
  for (Index r = 0; r < m.rows(); ++r) {
    OrderedJson row = OrderedJson::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(number(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& j) {
  if (!j.is_array()) throw Error(ErrorCode::FormatError, "matrix must be an array of rows");
  const Index rows = static_cast<Index>(j.size());
  const Index cols = rows > 0 ? static_cast<Index>(j.front().size()) : 0;
  Matrix m(rows, cols);
  for (Index r = 0; r < rows; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Index>(row.size()) != cols) {
      throw Error(ErrorCode::FormatError, "ragged matrix");
    }
    for (Index c = 0; c < cols; ++c) m(r, c) = number_from(row[static_cast<std::size_t>(c)]);
  }
  return m;
}

OrderedJson model_to_json(const LbwModel& model) {
  OrderedJson out;
  out["kind"] = model.basis->kind();
  out["dim"] = model.dimension();
  out["smoothing"] = model.smoothing;
  if (const auto* tps = dynamic_cast<const TpsModel*>(model.basis.get())) {
    out["control_points"] = tps->feature_dim();
    out["lambda"] = tps->lambda();
    out["centers"] = matrix_to_json(tps->centers().transpose());
  }
  return out;
}

LbwModel model_from_json(const json& j) {
  try {
    const std::string kind = j.at("kind").get<std::string>();
    const double mu = j.value("smoothing", 0.0);
    if (kind == "affine") {
      return {std::make_shared<const AffineBasis>(j.at("dim").get<Index>()), mu};
    }
    if (kind == "tps") {
      Matrix centers = matrix_from_json(j.at("centers")).transpose();
      return {std::make_shared<const TpsModel>(std::move(centers), j.at("lambda").get<double>()),
              mu};
    }
    throw Error(ErrorCode::FormatError, "unknown model kind '" + kind + "'");
  } catch (const json::exception& e) {
    throw Error(ErrorCode::FormatError, std::string("invalid model: ") + e.what());
  }
}

OrderedJson report_to_json(const TheoremReport& report) {
  OrderedJson out;
  out["full"] = report.full;
  out["tolerance"] = report.tolerance;
  out["aggregate_residual"] = report.aggregate_residual;
  if (report.full) {
    out["q_residual"] = report.q_residual;
    out["translation_residual"] = report.translation_residual;
  }
  OrderedJson shapes = OrderedJson::array();
  for (const ShapeConditions& s : report.shapes) {
    shapes.push_back({{"projector_residual", s.projector_residual},
                      {"witness_found", s.witness_found}});
  }
  out["shapes"] = std::move(shapes);
  OrderedJson verdicts = OrderedJson::array();
  for (bool v : report.verdicts()) verdicts.push_back(v);
  out["verdicts"] = std::move(verdicts);
  out["all_pass"] = report.all_pass();
  out["consistent"] = report.consistent();
  return out;
}

OrderedJson metrics_to_json(const MetricsRow& row) {
  OrderedJson out;
  out["method"] = row.method;
  out["rmse_r"] = number(row.rmse_r);
  out["rmse_d"] = number(row.rmse_d);
  out["cve"] = number(row.cve);
  out["wall_time_seconds"] = number(row.wall_time_seconds);
  return out;
}

std::string metrics_csv_header() { return "method,rmse_r,rmse_d,cve,wall_time_seconds"; }

std::string metrics_csv_row(const MetricsRow& row) {
  return row.method + ',' + format_double(row.rmse_r) + ',' + format_double(row.rmse_d) + ',' +
         format_double(row.cve) + ',' + format_double(row.wall_time_seconds);
}

OrderedJson solution_to_json(const GpaSolution& solution, const std::vector<LbwModel>& models,
                             const TheoremReport* report) {
  OrderedJson out;
  out["d"] = solution.reference.rows();
  out["m"] = solution.reference.cols();
  out["n"] = solution.weights.size();
  out["reference"] = matrix_to_json(solution.reference.transpose());
  OrderedJson lambdas = OrderedJson::array();
  for (Index k = 0; k < solution.prior.dim(); ++k) lambdas.push_back(solution.prior.lambdas()(k));
  out["prior"] = std::move(lambdas);
  out["nu"] = solution.nu;
  out["smoothing"] = solution.smoothing;
  out["reflection_flipped"] = solution.reflection_flipped;
  out["cost"] = {{"data", solution.data_cost},
                 {"regularization", solution.regularization_cost},
                 {"penalty", solution.penalty_cost},
                 {"total", solution.cost()}};
  OrderedJson weights = OrderedJson::array();
  for (const Matrix& w : solution.weights) weights.push_back(matrix_to_json(w));
  out["weights"] = std::move(weights);
  OrderedJson descriptors = OrderedJson::array();
  for (const LbwModel& model : models) descriptors.push_back(model_to_json(model));
  out["models"] = std::move(descriptors);
  if (report != nullptr) out["theorem_conditions"] = report_to_json(*report);
  return out;
}

GpaSolution solution_from_json(const json& j) {
  try {
    GpaSolution s;
    s.reference = matrix_from_json(j.at("reference")).transpose();
    s.prior = CovariancePrior(
        Eigen::Map<const Vector>(j.at("prior").get<std::vector<double>>().data(),
                                 static_cast<Index>(j.at("prior").size())));
    s.nu = j.at("nu").get<double>();
    s.smoothing = j.at("smoothing").get<std::vector<double>>();
    s.reflection_flipped = j.value("reflection_flipped", false);
    const json& cost = j.at("cost");
    s.data_cost = cost.at("data").get<double>();
    s.regularization_cost = cost.at("regularization").get<double>();
    s.penalty_cost = cost.at("penalty").get<double>();
    for (const json& w : j.at("weights")) s.weights.push_back(matrix_from_json(w));
    return s;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::FormatError, std::string("invalid solution: ") + e.what());
  }
}

std::vector<LbwModel> models_from_solution_json(const json& j) {
  std::vector<LbwModel> models;
  try {
    for (const json& m : j.at("models")) models.push_back(model_from_json(m));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::FormatError, std::string("invalid solution: ") + e.what());
  }
  return models;
}

}  // namespace defgpa
