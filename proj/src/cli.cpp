#include "pspin/cli.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <vector>

#include "pspin/errors.hpp"
#include "pspin/rs_functions.hpp"
#include "pspin/sturm.hpp"

namespace pspin::cli {

using nlohmann::json;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string csv_header() { return "p,beta,phase,m,q,max_f_violation,parisi_value"; }

std::string to_csv_row(const PhasePoint& pt) {
  std::string row = std::to_string(pt.p) + "," + format_double(pt.beta) + "," +
                    to_string(pt.phase) + ",";
  row += pt.m ? format_double(*pt.m) : "";
  row += ",";
  row += pt.q ? format_double(*pt.q) : "";
  row += ",";
  row += format_double(pt.max_f_violation) + "," + format_double(pt.parisi_value);
  return row;
}

json to_json(const PhasePoint& pt) {
  json j;
  j["p"] = pt.p;
  j["beta"] = pt.beta;
  j["phase"] = to_string(pt.phase);
  j["m"] = pt.m ? json(*pt.m) : json(nullptr);
  j["q"] = pt.q ? json(*pt.q) : json(nullptr);
  j["max_f_violation"] = pt.max_f_violation;
  j["parisi_value"] = pt.parisi_value;
  return j;
}

PhasePoint phase_point_from_json(const json& j) {
  PhasePoint pt;
  pt.p = j.at("p").get<int>();
  pt.beta = j.at("beta").get<double>();
  std::string phase = j.at("phase").get<std::string>();
  pt.phase = phase == "RS" ? Phase::RS : (phase == "OneRSB" ? Phase::OneRSB : Phase::Unknown);
  if (!j.at("m").is_null()) pt.m = j.at("m").get<double>();
  if (!j.at("q").is_null()) pt.q = j.at("q").get<double>();
  pt.max_f_violation = j.at("max_f_violation").get<double>();
  pt.parisi_value = j.at("parisi_value").get<double>();
  return pt;
}

namespace {

PhasePoint make_point(const ModelSpec& model, const PhaseClassification& cls) {
  PhasePoint pt;
  pt.p = model.p;
  pt.beta = model.beta;
  pt.phase = cls.phase;
  if (cls.phase == Phase::OneRSB && cls.solution) {
    pt.m = cls.solution->m;
    pt.q = cls.solution->q;
  }
  pt.max_f_violation = cls.curve.max_violation;
  pt.parisi_value = cls.parisi_value;
  return pt;
}

}  // namespace

void run_sweep(const SweepParams& params, std::ostream& out) {
  if (!(params.beta_min > 0.0 && params.beta_min < params.beta_max))
    throw std::invalid_argument("sweep: need 0 < beta-min < beta-max");
  if (params.steps < 2) throw std::invalid_argument("sweep: steps must be >= 2");

  QuadratureRule rule = QuadratureRule::gauss_hermite(params.quad_order);
  ClassifyOptions opts;
  opts.curve_grid_size = params.grid;

  bool as_json = params.format == "json";
  json rows = json::array();
  if (!as_json) out << csv_header() << "\n";

  for (int i = 0; i < params.steps; ++i) {
    double beta =
        params.beta_min + (params.beta_max - params.beta_min) * i / (params.steps - 1);
    ModelSpec model(params.p, beta);
    if (!opts.boundary) opts.boundary = solve_boundary(params.p, rule);
    PhaseClassification cls = classify_phase(model, rule, opts);
    if (params.warm_start && cls.solution) opts.warm_start = cls.solution;
    PhasePoint pt = make_point(model, cls);
    if (as_json)
      rows.push_back(to_json(pt));
    else
      out << to_csv_row(pt) << "\n";
  }
  if (as_json) out << rows.dump(2) << "\n";
}

namespace {

int run_locate(int p, int quad_order, const std::string& format, std::ostream& out,
               std::ostream& err) {
  QuadratureRule rule = QuadratureRule::gauss_hermite(quad_order);
  BoundarySolution sol;
  try {
    sol = solve_boundary(p, rule);
  } catch (const no_transition_error& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const bracket_error& e) {
    err << e.what() << "\n";
    return 3;
  }
  if (format == "json") {
    json j;
    j["p"] = sol.p;
    j["beta1"] = sol.beta1;
    j["q1"] = sol.q1;
    j["residual_C"] = sol.residual_C;
    j["residual_D"] = sol.residual_D;
    j["bracket_width"] = sol.bracket_width;
    out << j.dump(2) << "\n";
  } else {
    out << "p             = " << sol.p << "\n"
        << "beta1         = " << format_double(sol.beta1) << "\n"
        << "q1            = " << format_double(sol.q1) << "\n"
        << "residual_C    = " << format_double(sol.residual_C) << "\n"
        << "residual_D    = " << format_double(sol.residual_D) << "\n"
        << "bracket_width = " << format_double(sol.bracket_width) << "\n";
  }
  return 0;
}

int run_classify(int p, double beta, int quad_order, int grid, const std::string& format,
                 std::ostream& out) {
  QuadratureRule rule = QuadratureRule::gauss_hermite(quad_order);
  ModelSpec model(p, beta);
  ClassifyOptions opts;
  opts.curve_grid_size = grid;
  PhaseClassification cls = classify_phase(model, rule, opts);
  PhasePoint pt = make_point(model, cls);
  if (format == "json") {
    out << to_json(pt).dump(2) << "\n";
  } else {
    out << "p               = " << pt.p << "\n"
        << "beta            = " << format_double(pt.beta) << "\n"
        << "phase           = " << to_string(pt.phase) << "\n"
        << "m               = " << (pt.m ? format_double(*pt.m) : "-") << "\n"
        << "q               = " << (pt.q ? format_double(*pt.q) : "-") << "\n"
        << "max_f_violation = " << format_double(pt.max_f_violation) << "\n"
        << "parisi_value    = " << format_double(pt.parisi_value) << "\n";
  }
  return 0;
}

int run_verify_lemmas(const std::vector<int>& p_list, int quad_order, std::ostream& out) {
  QuadratureRule rule = QuadratureRule::gauss_hermite(quad_order);
  std::vector<std::string> failed;
  auto report = [&](const std::string& name, bool pass, const std::string& detail) {
    out << (pass ? "[PASS] " : "[FAIL] ") << name << ": " << detail << "\n";
    if (!pass) failed.push_back(name);
  };

  // Convexity of T: second central differences, step 1e-4, u in [0.05, 0.95].
  {
    double worst = std::numeric_limits<double>::infinity();
    const double h = 1e-4;
    for (int p : p_list) {
      for (double beta : {0.5, 1.0, 1.5}) {
        ModelSpec model(p, beta);
        double worst_model = std::numeric_limits<double>::infinity();
        for (int i = 0; i <= 90; ++i) {
          double u = 0.05 + 0.01 * i;
          double d2 = (T(model, u + h, rule) - 2.0 * T(model, u, rule) +
                       T(model, u - h, rule)) /
                      (h * h);
          worst_model = std::min(worst_model, d2);
        }
        out << "  T-convexity p=" << p << " beta=" << format_double(beta)
            << ": min second difference = " << format_double(worst_model) << "\n";
        worst = std::min(worst, worst_model);
      }
    }
    report("T-convexity", worst >= -1e-6, "min second difference = " + format_double(worst));
  }

  // Exact root count and isolation of the G1 quintic.
  {
    sturm::Polynomial quintic = sturm::g1_critical_quintic();
    int count = sturm::count_roots(quintic, 0, 1);
    auto intervals = sturm::isolate_roots(quintic, 0, 1);
    bool in_first = intervals.size() == 2 &&
                    intervals[0].first > sturm::Rational(4225, 10000) &&
                    intervals[0].second < sturm::Rational(4356, 10000);
    bool in_second = intervals.size() == 2 &&
                     intervals[1].first > sturm::Rational(8836, 10000) &&
                     intervals[1].second < sturm::Rational(9025, 10000);
    report("quintic-root-count", count == 2, "roots in [0,1] = " + std::to_string(count));
    report("quintic-isolation", in_first && in_second,
           "isolating intervals inside (0.4225, 0.4356) and (0.8836, 0.9025)");
    report("slope-identity", sturm::verify_g1_slope_identity(),
           "A^2 - (1-t^2) B^2 matches t^2 (t^4-3t^2+3)^2 q(t^2) exactly");
  }

  // G1 structure.
  {
    sturm::G1StructureReport rep = sturm::verify_g1_structure();
    report("G1-positivity", rep.positive_on_grid,
           "min over 999-point grid = " + format_double(rep.min_on_grid));
    report("G1-critical-points", rep.max_in_first_interval && rep.min_in_second_interval,
           "local max in [0.65, 0.66], local min in [0.94, 0.95]");
    report("G1-interval-minimum", rep.direct_interval_min > 0.0,
           "min over [0.94, 0.95] = " + format_double(rep.direct_interval_min) +
               " (closed-form interval bound " + format_double(rep.interval_bound) +
               " is not positive; superseded by the direct minimum)");
  }

  // G2 increasing.
  {
    bool ok = true;
    const double h = 1e-5;
    std::string detail;
    for (double x : {0.5, 5.0, 20.0}) {
      double slope = (G2(x + h, rule) - G2(x - h, rule)) / (2.0 * h);
      ok = ok && slope > 0.0;
      detail += "G2'(" + format_double(x) + ") = " + format_double(slope) + "  ";
    }
    report("G2-increasing", ok, detail);
  }

  if (!failed.empty()) {
    out << "failed checks:";
    for (const auto& name : failed) out << " " << name;
    out << "\n";
    return 4;
  }
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"RS/1RSB phase structure of the Ising pure p-spin glass"};
  app.require_subcommand(1);

  int quad_order = 200;
  std::string format = "text";
  app.add_option("--quad-order", quad_order, "Gauss-Hermite order")
      ->capture_default_str()
      ->check(CLI::Range(4, 2048));

  auto* locate = app.add_subcommand("locate", "solve the boundary system for (beta1, q1)");
  int locate_p = 0;
  std::string locate_format = "text";
  locate->add_option("--p", locate_p, "spin degree")->required();
  locate->add_option("--format", locate_format, "text|json")
      ->check(CLI::IsMember({"text", "json"}));

  auto* classify = app.add_subcommand("classify", "phase of the Parisi measure at (p, beta)");
  int classify_p = 0;
  double classify_beta = 0.0;
  int classify_grid = 2001;
  std::string classify_format = "text";
  classify->add_option("--p", classify_p, "spin degree")->required();
  classify->add_option("--beta", classify_beta, "inverse temperature")->required();
  classify->add_option("--grid", classify_grid, "criterion-curve grid size")
      ->capture_default_str()
      ->check(CLI::Range(2, 1000000));
  classify->add_option("--format", classify_format, "text|json")
      ->check(CLI::IsMember({"text", "json"}));

  auto* sweep = app.add_subcommand("sweep", "phase diagram rows over a beta range");
  SweepParams sp;
  sweep->add_option("--p", sp.p, "spin degree")->required();
  sweep->add_option("--beta-min", sp.beta_min, "lower end")->required();
  sweep->add_option("--beta-max", sp.beta_max, "upper end")->required();
  sweep->add_option("--steps", sp.steps, "row count")->required();
  sweep->add_option("--grid", sp.grid, "criterion-curve grid size")
      ->capture_default_str()
      ->check(CLI::Range(2, 1000000));
  std::string sweep_format = "csv";
  sweep->add_option("--format", sweep_format, "csv|json")
      ->check(CLI::IsMember({"csv", "json"}));
  bool no_warm_start = false;
  sweep->add_flag("--no-warm-start", no_warm_start,
                  "solve each row from the standard start instead of continuing");

  auto* verify = app.add_subcommand("verify-lemmas", "numeric checks behind the phase results");
  std::vector<int> verify_p;
  verify->add_option("--p", verify_p, "spin degrees for the T-convexity grid");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      out << app.help();
      return 0;
    }
    err << e.what() << "\n";
    return 1;
  }

  try {
    if (*locate) {
      if (locate_p < 2) {
        err << "locate: p must be >= 2\n";
        return 1;
      }
      return run_locate(locate_p, quad_order, locate_format, out, err);
    }
    if (*classify) {
      if (classify_p < 3 || !(classify_beta > 0.0)) {
        err << "classify: requires p >= 3 and beta > 0\n";
        return 1;
      }
      return run_classify(classify_p, classify_beta, quad_order, classify_grid,
                          classify_format, out);
    }
    if (*sweep) {
      sp.quad_order = quad_order;
      sp.format = sweep_format;
      sp.warm_start = !no_warm_start;
      if (sp.p < 3) {
        err << "sweep: p must be >= 3\n";
        return 1;
      }
      run_sweep(sp, out);
      return 0;
    }
    if (*verify) {
      if (verify_p.empty()) verify_p = {3, 4, 10};
      return run_verify_lemmas(verify_p, quad_order, out);
    }
  } catch (const no_transition_error& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const bracket_error& e) {
    err << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    err << e.what() << "\n";
    return 1;
  } catch (const std::domain_error& e) {
    err << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace pspin::cli
