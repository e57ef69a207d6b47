#include "pspin/cole_hopf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "pspin/errors.hpp"
#include "pspin/rs_functions.hpp"

namespace pspin {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double sq_diff(const ModelSpec& model, double a, double b) {
  // xi'(a) - xi'(b) clamped at 0; the sqrt of this is Y_{a-b} with Y_{a-a} = 0.
  double d = xi_prime(model, a) - xi_prime(model, b);
  return d > 0.0 ? d : 0.0;
}

}  // namespace

DiscreteMeasure::DiscreteMeasure(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
  if (atoms_.empty()) throw std::invalid_argument("DiscreteMeasure: needs at least one atom");
  double total = 0.0;
  double prev = -1.0;
  for (const Atom& a : atoms_) {
    if (!(a.location >= 0.0 && a.location < 1.0))
      throw std::invalid_argument("DiscreteMeasure: atom locations must lie in [0,1)");
    if (!(a.location > prev))
      throw std::invalid_argument("DiscreteMeasure: atom locations must be strictly increasing");
    if (!(a.mass > 0.0 && a.mass <= 1.0))
      throw std::invalid_argument("DiscreteMeasure: atom masses must lie in (0,1]");
    prev = a.location;
    total += a.mass;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw std::invalid_argument("DiscreteMeasure: masses must sum to 1 (got " +
                                std::to_string(total) + ")");

  int kk = k();
  levels_.resize(kk + 3);
  cumulative_.resize(kk + 2);
  levels_[0] = 0.0;
  cumulative_[0] = 0.0;
  double cum = 0.0;
  for (int i = 0; i <= kk; ++i) {
    levels_[i + 1] = atoms_[i].location;
    cum += atoms_[i].mass;
    cumulative_[i + 1] = cum;
  }
  cumulative_[kk + 1] = 1.0;
  levels_[kk + 2] = 1.0;
}

namespace {

// Recursive Cole-Hopf evaluation of Phi at level q_p, argument x.
double phi_level(const DiscreteMeasure& mu, const ModelSpec& model,
                 const QuadratureRule& rule, int p, double x, double terminal_shift) {
  int k = mu.k();
  if (p == k + 1) return num::log_cosh(x) + terminal_shift;

  const auto& q = mu.levels();
  const auto& m = mu.cumulative();
  double Y = std::sqrt(sq_diff(model, q[p + 1], q[p]));
  if (Y == 0.0) return phi_level(mu, model, rule, p + 1, x, terminal_shift);

  auto nodes = rule.nodes();
  auto w = rule.weights();
  auto lw = rule.log_weights();
  int n = rule.order();
  double mp = m[p];
  if (mp == 0.0) {
    // Mass-zero level: the m -> 0 limit of (1/m) log E exp(m Phi) is E Phi.
    double acc = 0.0;
    for (int i = 0; i < n; ++i)
      acc += w[i] * phi_level(mu, model, rule, p + 1, x + Y * nodes[i], terminal_shift);
    return acc;
  }
  double M = kNegInf;
  std::vector<double> L(n, kNegInf);
  for (int i = 0; i < n; ++i) {
    if (lw[i] == kNegInf) continue;
    L[i] = mp * phi_level(mu, model, rule, p + 1, x + Y * nodes[i], terminal_shift) + lw[i];
    M = std::max(M, L[i]);
  }
  double s = 0.0;
  for (double l : L)
    if (l != kNegInf) s += std::exp(l - M);
  return (M + std::log(s)) / mp;
}

}  // namespace

double phi_at_origin(const DiscreteMeasure& measure, const ModelSpec& model,
                     const QuadratureRule& rule) {
  if (measure.atoms().size() > 3)
    throw capacity_error("phi_at_origin: at most 3 atoms supported (got " +
                         std::to_string(measure.atoms().size()) + ")");
  int k = measure.k();
  double shift = 0.5 * (xi_prime(model, 1.0) - xi_prime(model, measure.levels()[k + 1]));
  return phi_level(measure, model, rule, 0, 0.0, shift);
}

double parisi_functional(const DiscreteMeasure& measure, const ModelSpec& model,
                         const QuadratureRule& rule) {
  const auto& q = measure.levels();
  const auto& m = measure.cumulative();
  // alpha is m_p on [q_p, q_{p+1}); integral of alpha(s) s xi''(s) telescopes
  // through theta.
  double correction = 0.0;
  for (int p = 0; p <= measure.k() + 1; ++p)
    correction += m[p] * (theta(model, q[p + 1]) - theta(model, q[p]));
  return std::numbers::ln2 + phi_at_origin(measure, model, rule) - 0.5 * correction;
}

double f_rs(const ModelSpec& model, double u, const QuadratureRule& rule) {
  return C(model, u, rule);
}

namespace {

void check_mq(double m, double q, const char* op) {
  if (!(m > 0.0 && m <= 1.0))
    throw std::domain_error(std::string(op) + ": m must lie in (0,1]");
  if (!(q > 0.0 && q < 1.0))
    throw std::domain_error(std::string(op) + ": q must lie in (0,1)");
}

}  // namespace

double gamma_1rsb(const ModelSpec& model, double m, double q, double u,
                  const QuadratureRule& rule) {
  check_mq(m, q, "gamma_1rsb");
  if (!(u >= 0.0 && u <= 1.0)) throw std::domain_error("gamma_1rsb: u must lie in [0,1]");

  double Yq = y_of(model, q);
  double logZ = log_expect_cosh_pow(rule, Yq, m);
  auto x = rule.nodes();
  auto lw = rule.log_weights();
  int n = rule.order();

  if (u >= q) {
    // E[tanh^2(S) cosh(S) cosh^{m-1}(Yq g1)] e^{-Yuq^2/2} / E[cosh^m(Yq g)],
    // S = Yq g1 + Yuq g2; all normalizations folded into the exponent.
    double Yuq2 = sq_diff(model, u, q);
    double Yuq = std::sqrt(Yuq2);
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
      if (lw[i] == kNegInf) continue;
      double a = Yq * x[i];
      double base = (m - 1.0) * num::log_cosh(a) - 0.5 * Yuq2 - logZ + lw[i];
      for (int j = 0; j < n; ++j) {
        if (lw[j] == kNegInf) continue;
        double S = a + Yuq * x[j];
        double t = std::tanh(S);
        acc += t * t * std::exp(base + num::log_cosh(S) + lw[j]);
      }
    }
    return acc;
  }

  // Nested form on [0, q): E1[E2[tanh cosh^m]^2 / E2[cosh^m]] / E[cosh^m].
  double Yu = y_of(model, u);
  double Yqu = std::sqrt(sq_diff(model, q, u));
  double acc = 0.0;
  std::vector<double> L(n);
  for (int i = 0; i < n; ++i) {
    if (lw[i] == kNegInf) continue;
    double M = kNegInf;
    for (int j = 0; j < n; ++j) {
      L[j] = lw[j] == kNegInf ? kNegInf : m * num::log_cosh(Yu * x[i] + Yqu * x[j]) + lw[j];
      M = std::max(M, L[j]);
    }
    double A = 0.0, B = 0.0;
    for (int j = 0; j < n; ++j) {
      if (L[j] == kNegInf) continue;
      double e = std::exp(L[j] - M);
      A += e * std::tanh(Yu * x[i] + Yqu * x[j]);
      B += e;
    }
    acc += (A * A / B) * std::exp(M - logZ + lw[i]);
  }
  return acc;
}

double f_1rsb(const ModelSpec& model, double m, double q, double u,
              const QuadratureRule& rule) {
  check_mq(m, q, "f_1rsb");
  if (!(u >= 0.0 && u <= 1.0)) throw std::domain_error("f_1rsb: u must lie in [0,1]");

  double Yq = y_of(model, q);
  double logZ = log_expect_cosh_pow(rule, Yq, m);
  double mean_lc = cosh_pow_mean(rule, Yq, m, num::log_cosh);
  auto x = rule.nodes();
  auto w = rule.weights();
  auto lw = rule.log_weights();
  int n = rule.order();

  if (u <= q) {
    // -(1/m) E[cosh^m lc]/Z + [theta(q)-theta(u)]/2
    //   + (1/m^2) E1[N log N]/Z with N(g1) = E2[cosh^m(Yu g1 + Yqu g2)].
    double Yu = y_of(model, u);
    double Yqu = std::sqrt(sq_diff(model, q, u));
    double acc = 0.0;
    std::vector<double> L(n);
    for (int i = 0; i < n; ++i) {
      if (lw[i] == kNegInf) continue;
      double M = kNegInf;
      for (int j = 0; j < n; ++j) {
        L[j] = lw[j] == kNegInf ? kNegInf : m * num::log_cosh(Yu * x[i] + Yqu * x[j]) + lw[j];
        M = std::max(M, L[j]);
      }
      double B = 0.0;
      for (int j = 0; j < n; ++j)
        if (L[j] != kNegInf) B += std::exp(L[j] - M);
      double logN = M + std::log(B);
      acc += std::exp(logN - logZ + lw[i]) * logN;
    }
    return -(1.0 / m) * mean_lc + 0.5 * (theta(model, q) - theta(model, u)) +
           acc / (m * m);
  }

  // -E[cosh^m lc]/Z - [theta(u)-theta(q)]/2 - [xi'(u)-xi'(q)]/2
  //   + E1[cosh^m(Yq g1) R(g1)]/Z,
  // R(g1) = E2[cosh(S) lc(S)]/E2[cosh(S)] with S = Yq g1 + b g2 evaluated by
  // the exact offset tilt: sigma(2a) E[lc(a+b^2+bg)] + sigma(-2a) E[lc(a-b^2+bg)].
  double b2 = sq_diff(model, u, q);
  double b = std::sqrt(b2);
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    if (lw[i] == kNegInf) continue;
    double a = Yq * x[i];
    double rp = 0.0, rm = 0.0;
    for (int j = 0; j < n; ++j) {
      rp += w[j] * num::log_cosh(a + b2 + b * x[j]);
      rm += w[j] * num::log_cosh(a - b2 + b * x[j]);
    }
    double R = num::sigmoid(2.0 * a) * rp + num::sigmoid(-2.0 * a) * rm;
    acc += std::exp(m * num::log_cosh(a) - logZ + lw[i]) * R;
  }
  return -mean_lc - 0.5 * (theta(model, u) - theta(model, q)) -
         0.5 * (xi_prime(model, u) - xi_prime(model, q)) + acc;
}

bool CriterionCurve::admissible() const {
  if (max_violation > tolerance) return false;
  return std::all_of(zeros_at_support.begin(), zeros_at_support.end(),
                     [](bool z) { return z; });
}

CriterionCurve criterion_curve(const DiscreteMeasure& measure, const ModelSpec& model,
                               int grid_size, const QuadratureRule& rule,
                               double tolerance) {
  const auto& atoms = measure.atoms();
  if (atoms.size() > 2)
    throw capacity_error("criterion_curve: closed-form f exists for at most 2 atoms");
  if (atoms[0].location != 0.0)
    throw std::invalid_argument("criterion_curve: first atom must sit at the origin");
  if (grid_size < 2) throw std::invalid_argument("criterion_curve: grid_size must be >= 2");

  std::vector<double> grid;
  grid.reserve(grid_size + atoms.size());
  for (int i = 0; i < grid_size; ++i)
    grid.push_back(static_cast<double>(i) / (grid_size - 1));
  for (const auto& a : atoms) grid.push_back(a.location);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  auto f = [&](double u) {
    if (atoms.size() == 1) return f_rs(model, u, rule);
    return f_1rsb(model, atoms[0].mass, atoms[1].location, u, rule);
  };

  CriterionCurve curve;
  curve.tolerance = tolerance;
  curve.grid = grid;
  curve.f_values.reserve(grid.size());
  curve.max_violation = -std::numeric_limits<double>::infinity();
  for (double u : grid) {
    double v = f(u);
    curve.f_values.push_back(v);
    curve.max_violation = std::max(curve.max_violation, v);
  }
  for (const auto& a : atoms)
    curve.zeros_at_support.push_back(std::abs(f(a.location)) <= tolerance);
  return curve;
}

}  // namespace pspin
