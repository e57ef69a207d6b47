#include "pspin/one_rsb.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "pspin/errors.hpp"
#include "pspin/rs_functions.hpp"

namespace pspin {

namespace {

constexpr double kResidualTol = 1e-8;
constexpr double kJacobianStep = 1e-6;
constexpr int kMaxNewtonIters = 100;

void check_mq(double m, double q, const char* op) {
  if (!(m > 0.0 && m <= 1.0))
    throw std::domain_error(std::string(op) + ": m must lie in (0,1]");
  if (!(q > 0.0 && q < 1.0))
    throw std::domain_error(std::string(op) + ": q must lie in (0,1)");
}

}  // namespace

double C1_1rsb(const ModelSpec& model, double m, double q, const QuadratureRule& rule) {
  check_mq(m, q, "C1_1rsb");
  double Y = y_of(model, q);
  double logZ = log_expect_cosh_pow(rule, Y, m);
  double mean_lc = cosh_pow_mean(rule, Y, m, num::log_cosh);
  return -logZ / (m * m) + mean_lc / m - 0.5 * theta(model, q);
}

double D1_1rsb(const ModelSpec& model, double m, double q, const QuadratureRule& rule) {
  check_mq(m, q, "D1_1rsb");
  double Y = y_of(model, q);
  if (m == 1.0) return tanh_sq_cosh_mean(rule, Y) - q;
  double la_m = log_expect_cosh_pow(rule, Y, m);
  // E[cosh^{m-2}] has a negative exponent, outside the (0,1] guard of the
  // public entry point; evaluate its log-sum-exp inline.
  auto x = rule.nodes();
  auto lw = rule.log_weights();
  int n = rule.order();
  double M = -std::numeric_limits<double>::infinity();
  std::vector<double> L(n, M);
  for (int i = 0; i < n; ++i) {
    if (lw[i] == -std::numeric_limits<double>::infinity()) continue;
    L[i] = (m - 2.0) * num::log_cosh(Y * x[i]) + lw[i];
    M = std::max(M, L[i]);
  }
  double s = 0.0;
  for (double l : L)
    if (l != -std::numeric_limits<double>::infinity()) s += std::exp(l - M);
  double la_minus = M + std::log(s);
  return 1.0 - std::exp(la_minus - la_m) - q;
}

namespace {

struct Residual {
  double c1;
  double d1;
  double norm() const { return std::max(std::abs(c1), std::abs(d1)); }
};

Residual eval_residual(const ModelSpec& model, double m, double q,
                       const QuadratureRule& rule) {
  return {C1_1rsb(model, m, q, rule), D1_1rsb(model, m, q, rule)};
}

// One Newton attempt from (m0, q0); returns nullopt when it fails to reach
// the residual tolerance inside the unit square.
std::optional<OneRsbSolution> newton_attempt(const ModelSpec& model,
                                             const QuadratureRule& rule, double m0,
                                             double q0) {
  double m = std::clamp(m0, 1e-6, 1.0);
  double q = std::clamp(q0, 1e-9, 1.0 - 1e-9);
  for (int it = 0; it < kMaxNewtonIters; ++it) {
    Residual F = eval_residual(model, m, q, rule);
    if (F.norm() <= kResidualTol) {
      return OneRsbSolution{m, q, F.c1, F.d1, it};
    }
    double h = kJacobianStep;
    // Central differences, one-sided against the m <= 1 edge.
    double m_hi = std::min(m + h, 1.0), m_lo = std::max(m - h, 1e-7);
    Residual Fm_hi = eval_residual(model, m_hi, q, rule);
    Residual Fm_lo = eval_residual(model, m_lo, q, rule);
    Residual Fq_hi = eval_residual(model, m, q + h, rule);
    Residual Fq_lo = eval_residual(model, m, q - h, rule);
    double j00 = (Fm_hi.c1 - Fm_lo.c1) / (m_hi - m_lo);
    double j01 = (Fq_hi.c1 - Fq_lo.c1) / (2.0 * h);
    double j10 = (Fm_hi.d1 - Fm_lo.d1) / (m_hi - m_lo);
    double j11 = (Fq_hi.d1 - Fq_lo.d1) / (2.0 * h);
    double det = j00 * j11 - j01 * j10;
    if (det == 0.0 || !std::isfinite(det)) return std::nullopt;
    double dm = (-F.c1 * j11 + F.d1 * j01) / det;
    double dq = (-F.d1 * j00 + F.c1 * j10) / det;
    m = std::clamp(m + dm, 1e-6, 1.0);
    q = std::clamp(q + dq, 1e-9, 1.0 - 1e-9);
  }
  return std::nullopt;
}

}  // namespace

OneRsbSolution solve_1rsb(const ModelSpec& model, const QuadratureRule& rule,
                          std::optional<BoundarySolution> beta1_hint,
                          std::optional<OneRsbSolution> warm_start) {
  if (!(model.beta > 0.0)) throw std::domain_error("solve_1rsb: requires beta > 0");
  BoundarySolution boundary =
      beta1_hint ? *beta1_hint : solve_boundary(model.p, rule);
  if (!(model.beta > boundary.beta1))
    throw below_transition_error("solve_1rsb: beta = " + std::to_string(model.beta) +
                                 " is not above beta1 = " + std::to_string(boundary.beta1));

  double m0 = warm_start ? warm_start->m : 1.0 - 1e-3;
  double q0 = warm_start ? warm_start->q : boundary.q1;
  std::optional<OneRsbSolution> sol = newton_attempt(model, rule, m0, q0);

  if (!sol) {
    // Continuation in beta from just above the threshold; the Newton basin
    // near m = 1 is narrow and widens monotonically along the branch.
    double beta = boundary.beta1 + 1e-4;
    double step = 1e-4;
    double mc = 1.0 - 1e-3, qc = boundary.q1;
    while (true) {
      if (beta >= model.beta) beta = model.beta;
      std::optional<OneRsbSolution> s =
          newton_attempt(ModelSpec(model.p, beta), rule, mc, qc);
      if (!s)
        throw no_window_error("solve_1rsb: Newton failed during continuation at beta = " +
                              std::to_string(beta));
      mc = s->m;
      qc = s->q;
      if (beta == model.beta) {
        sol = s;
        break;
      }
      step *= 2.0;
      beta += step;
    }
  }

  if (sol->m >= 1.0 - 1e-9)
    throw no_window_error(
        "solve_1rsb: converged onto m = 1 (the RS/1RSB threshold, not a 1RSB point)");
  return *sol;
}

const char* to_string(Phase phase) {
  switch (phase) {
    case Phase::RS: return "RS";
    case Phase::OneRSB: return "OneRSB";
    case Phase::Unknown: return "Unknown";
  }
  return "Unknown";
}

PhaseClassification classify_phase(const ModelSpec& model, const QuadratureRule& rule,
                                   const ClassifyOptions& options) {
  if (model.p < 3) throw std::domain_error("classify_phase: requires p >= 3");
  if (!(model.beta > 0.0)) throw std::domain_error("classify_phase: requires beta > 0");

  DiscreteMeasure rs_measure = DiscreteMeasure::dirac_origin();
  if (classify_rs(model, rule)) {
    CriterionCurve curve = criterion_curve(rs_measure, model, options.curve_grid_size,
                                           rule, options.curve_tolerance);
    return {Phase::RS, std::nullopt, std::move(curve),
            parisi_functional(rs_measure, model, rule)};
  }

  std::optional<OneRsbSolution> sol;
  try {
    sol = solve_1rsb(model, rule, options.boundary, options.warm_start);
  } catch (const below_transition_error&) {
  } catch (const no_window_error&) {
  }

  if (!sol) {
    CriterionCurve curve = criterion_curve(rs_measure, model, options.curve_grid_size,
                                           rule, options.curve_tolerance);
    return {Phase::Unknown, std::nullopt, std::move(curve),
            parisi_functional(rs_measure, model, rule)};
  }

  DiscreteMeasure mu = DiscreteMeasure::two_atom(sol->m, sol->q);
  CriterionCurve curve =
      criterion_curve(mu, model, options.curve_grid_size, rule, options.curve_tolerance);
  double parisi = parisi_functional(mu, model, rule);
  Phase phase = curve.admissible() ? Phase::OneRSB : Phase::Unknown;
  return {phase, sol, std::move(curve), parisi};
}

}  // namespace pspin
