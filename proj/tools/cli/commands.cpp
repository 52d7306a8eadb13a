#include "cli/commands.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include "defgpa/defgpa.hpp"
#include "defgpa/parallel.hpp"

namespace defgpa::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Problem {
  ShapeSet set;
  std::vector<LbwModel> models;
  CovariancePrior prior;
  SolveOptions options;
};

void validate(const RunConfig& c) {
  if (c.format != "json" && c.format != "csv") throw UsageError("--format must be json or csv");
  if (c.model != "affine" && c.model != "tps") throw UsageError("--model must be affine or tps");
  if (c.model == "tps") {
    if (c.ctrl < 2) throw UsageError("--ctrl must be >= 2");
    if (!(c.theta > 0.0)) throw UsageError("--theta must be > 0 for tps");
  }
  if (c.flat_axes < 0) throw UsageError("--flat-axes must be >= 0");
  if (c.group_size < 1) throw UsageError("--group-size must be >= 1");
  if (c.lambda_internal && !(*c.lambda_internal >= 0.0)) {
    throw UsageError("--lambda-internal must be >= 0");
  }
}

std::optional<double> parse_nu(const std::string& text) {
  if (text == "auto") return std::nullopt;
  double value = 0.0;
  std::size_t used = 0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    throw UsageError("--nu must be 'auto' or a number");
  }
  if (used != text.size() || !(value >= 0.0)) throw UsageError("--nu must be 'auto' or >= 0");
  return value;
}

std::vector<LbwModel> build_models(const RunConfig& c, const ShapeSet& set, double theta) {
  if (c.model == "affine") return affine_models(set);
  TpsOptions opts;
  opts.per_axis = c.ctrl;
  opts.flat_axes = c.flat_axes;
  opts.theta = theta;
  opts.lambda = c.lambda_internal.value_or(-1.0);
  return tps_models(set, opts);
}

Problem prepare(const RunConfig& c) {
  validate(c);
  Problem p;
  p.set = load_shapes(c.input, parse_shape_format(c.format));
  if (c.flat_axes >= p.set.dim()) throw UsageError("--flat-axes must be < d");
  p.options.nu = parse_nu(c.nu);
  if (c.reflection_ref) {
    const std::size_t idx = p.set.find(*c.reflection_ref);
    if (idx == p.set.count()) throw UsageError("unknown --reflection-ref '" + *c.reflection_ref + "'");
    p.options.reflection_reference = idx;
  }
  p.models = build_models(c, p.set, c.theta);
  p.prior = estimate_prior(p.set);
  return p;
}

std::string method_name(const RunConfig& c) {
  return c.model == "affine" ? std::string("affine") : "tps(" + std::to_string(c.ctrl) + ")";
}

void emit(const RunConfig& c, const std::string& text, std::ostream& out) {
  if (!c.output) {
    out << text;
    return;
  }
  std::ofstream file(*c.output);
  if (!file) throw Error(ErrorCode::FormatError, "cannot write " + *c.output);
  file << text;
}

double nan() { return std::numeric_limits<double>::quiet_NaN(); }

double safe_rmse_d(const GpaSolution& s, const ShapeSet& set, const std::vector<LbwModel>& m) {
  try {
    return rmse_d(s, set, m);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::SingularTransform || e.code() == ErrorCode::Unsupported ||
        e.code() == ErrorCode::DegenerateCenters) {
      return nan();
    }
    throw;
  }
}

CveConfig cve_config(const RunConfig& c, const ShapeSet& set) {
  if (c.group_size >= set.points()) throw UsageError("--group-size must be < m");
  CveConfig cfg;
  cfg.group_size = c.group_size;
  if (c.seed) cfg.seed = *c.seed;
  return cfg;
}

template <typename F>
int guarded(std::ostream& err, F&& body) {
  auto report = [&](const std::string& code, const std::string& message) {
    OrderedJson j;
    j["error"] = code;
    j["message"] = message;
    err << j.dump() << '\n';
  };
  try {
    return body();
  } catch (const UsageError& e) {
    report("Usage", e.what());
    return kUsage;
  } catch (const SingularSystemError& e) {
    OrderedJson j;
    j["error"] = std::string(to_string(e.code()));
    j["message"] = e.what();
    j["shape_index"] = e.shape_index();
    err << j.dump() << '\n';
    return kRuntime;
  } catch (const Error& e) {
    report(std::string(to_string(e.code())), e.what());
    return e.code() == ErrorCode::FormatError ? kUsage : kRuntime;
  } catch (const std::exception& e) {
    report("Internal", e.what());
    return kRuntime;
  }
}

OrderedJson predicted_to_json(const CveResult& r, const ShapeSet& set) {
  OrderedJson shapes = OrderedJson::array();
  for (std::size_t i = 0; i < r.predicted.size(); ++i) {
    OrderedJson pts = OrderedJson::array();
    for (Index j = 0; j < r.predicted[i].cols(); ++j) {
      if (!r.predicted[i].col(j).allFinite()) {
        pts.push_back(nullptr);
        continue;
      }
      OrderedJson pt = OrderedJson::array();
      for (Index k = 0; k < r.predicted[i].rows(); ++k) pt.push_back(r.predicted[i](k, j));
      pts.push_back(std::move(pt));
    }
    shapes.push_back({{"id", set[i].id()}, {"points", std::move(pts)}});
  }
  return shapes;
}

}  // namespace

std::vector<double> default_theta_grid() {
  std::vector<double> grid;
  for (int e = -5; e <= 5; ++e) grid.push_back(std::pow(10.0, e));
  return grid;
}

int cmd_solve(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto start = std::chrono::steady_clock::now();
    Problem p = prepare(config);
    const GpaSolution solution = solve(p.set, p.models, p.prior, p.options);
    const TheoremReport report = check_theorem_conditions(p.set, p.models);
    MetricsRow row;
    row.method = method_name(config);
    row.rmse_r = rmse_r(solution, p.set, p.models);
    row.rmse_d = safe_rmse_d(solution, p.set, p.models);
    row.cve = nan();
    if (config.with_cve) {
      row.cve = cross_validation_error(p.set, p.models, p.prior, p.options,
                                       cve_config(config, p.set))
                    .cve;
    }
    OrderedJson doc = solution_to_json(solution, p.models, &report);
    OrderedJson metrics = metrics_to_json(row);
    if (config.timing) {
      const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
      metrics["wall_time_seconds"] = elapsed.count();
    } else {
      metrics.erase("wall_time_seconds");
    }
    doc["metrics"] = std::move(metrics);
    emit(config, doc.dump() + "\n", out);
    return int{kOk};
  });
}

int cmd_sweep(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const std::vector<double> grid =
        config.theta_grid.empty() ? default_theta_grid() : config.theta_grid;
    if (grid.size() < 2) throw UsageError("--theta-grid needs at least 2 values");
    for (double t : grid) {
      if (!(t > 0.0)) throw UsageError("--theta-grid values must be > 0");
    }
    Problem p = prepare(config);
    const CveConfig cfg = cve_config(config, p.set);

    struct Row {
      double rmse_r = nan(), rmse_d = nan(), cve = nan();
    };
    std::vector<Row> rows(grid.size());
    parallel_for(grid.size(), [&](std::size_t g) {
      try {
        const auto models = build_models(config, p.set, grid[g]);
        const GpaSolution s = solve(p.set, models, p.prior, p.options);
        rows[g].rmse_r = rmse_r(s, p.set, models);
        rows[g].rmse_d = safe_rmse_d(s, p.set, models);
        rows[g].cve = cross_validation_error(p.set, models, p.prior, p.options, cfg).cve;
      } catch (const Error& e) {
        err << "theta " << format_double(grid[g]) << ": " << e.what() << '\n';
      }
    });

    std::ostringstream csv;
    csv << "theta,rmse_r,rmse_d,cve\n";
    for (std::size_t g = 0; g < grid.size(); ++g) {
      csv << format_double(grid[g]) << ',' << format_double(rows[g].rmse_r) << ','
          << format_double(rows[g].rmse_d) << ',' << format_double(rows[g].cve) << '\n';
    }
    emit(config, csv.str(), out);
    return int{kOk};
  });
}

int cmd_cve(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    Problem p = prepare(config);
    const CveResult r =
        cross_validation_error(p.set, p.models, p.prior, p.options, cve_config(config, p.set));
    OrderedJson doc;
    doc["cve"] = r.cve;
    doc["group_size"] = config.group_size;
    doc["folds"] = r.folds;
    doc["skipped_folds"] = r.skipped_folds;
    doc["predicted"] = predicted_to_json(r, p.set);
    emit(config, doc.dump() + "\n", out);
    return int{kOk};
  });
}

int cmd_prior(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    validate(config);
    const ShapeSet set = load_shapes(config.input, parse_shape_format(config.format));
    const CovariancePrior prior = estimate_prior(set);
    OrderedJson doc;
    doc["lambdas"] = std::vector<double>(prior.lambdas().data(),
                                         prior.lambdas().data() + prior.dim());
    emit(config, doc.dump() + "\n", out);
    return int{kOk};
  });
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Closed-form generalized Procrustes analysis with linear basis warps", "defgpa"};
  app.require_subcommand(1);
  RunConfig c;

  auto add_common = [&c](CLI::App* sub) {
    sub->add_option("--input,-i", c.input, "Shape file (JSON) or CSV manifest")->required();
    sub->add_option("--format", c.format, "json or csv")->capture_default_str();
    sub->add_option("--output,-o", c.output, "Output path (stdout when omitted)");
  };
  auto add_model = [&c](CLI::App* sub) {
    sub->add_option("--model", c.model, "affine or tps")->capture_default_str();
    sub->add_option("--ctrl", c.ctrl, "TPS control points per axis")->capture_default_str();
    sub->add_option("--flat-axes", c.flat_axes, "Principal axes given two control layers")
        ->capture_default_str();
    sub->add_option("--theta", c.theta, "Smoothing scale; mu_i = nnz(Gamma_i) * theta")
        ->capture_default_str();
    sub->add_option("--nu", c.nu, "Penalty weight: auto (n/m) or a value")->capture_default_str();
    sub->add_option("--lambda-internal", c.lambda_internal, "TPS kernel smoothing");
    sub->add_option("--reflection-ref", c.reflection_ref, "Shape id fixing the reflection");
  };

  CLI::App* solve_cmd = app.add_subcommand("solve", "Solve and report the registration");
  add_common(solve_cmd);
  add_model(solve_cmd);
  solve_cmd->add_flag("--with-cve", c.with_cve, "Also compute the cross-validation error");
  solve_cmd->add_option("--group-size", c.group_size, "Points per CVE fold")->capture_default_str();
  solve_cmd->add_option("--seed", c.seed, "Shuffle seed for CVE folds");
  solve_cmd->add_flag("--timing", c.timing, "Record wall time in the metrics row");

  CLI::App* sweep_cmd = app.add_subcommand("sweep", "Metrics over a grid of theta values (CSV)");
  add_common(sweep_cmd);
  add_model(sweep_cmd);
  sweep_cmd->add_option("--theta-grid", c.theta_grid, "Comma-separated theta values")
      ->delimiter(',');
  sweep_cmd->add_option("--group-size", c.group_size, "Points per CVE fold")->capture_default_str();
  sweep_cmd->add_option("--seed", c.seed, "Shuffle seed for CVE folds");

  CLI::App* cve_cmd = app.add_subcommand("cve", "Leave-N-out cross-validation error");
  add_common(cve_cmd);
  add_model(cve_cmd);
  cve_cmd->add_option("--group-size", c.group_size, "Points per fold")->capture_default_str();
  cve_cmd->add_option("--seed", c.seed, "Shuffle seed for folds");

  CLI::App* prior_cmd = app.add_subcommand("prior", "Estimate the reference covariance prior");
  add_common(prior_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? int{kOk} : int{kUsage};
  }

  if (solve_cmd->parsed()) return cmd_solve(c, out, err);
  if (sweep_cmd->parsed()) return cmd_sweep(c, out, err);
  if (cve_cmd->parsed()) return cmd_cve(c, out, err);
  return cmd_prior(c, out, err);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"defgpa"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace defgpa::cli
