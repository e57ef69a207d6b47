#include "pspin/rs_functions.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace pspin {

namespace {

void check_q01(double q, const char* op) {
  if (!(q >= 0.0 && q <= 1.0))
    throw std::domain_error(std::string(op) + ": q must lie in [0,1]");
}

}  // namespace

double C1(const ModelSpec& model, double q, const QuadratureRule& rule) {
  check_q01(q, "C1");
  if (q == 0.0 || model.beta == 0.0) return 0.0;
  return cosh_weighted_mean(rule, y_of(model, q), num::log_cosh);
}

double C2(const ModelSpec& model, double q) {
  check_q01(q, "C2");
  return 0.5 * xi_prime(model, q) + 0.5 * theta(model, q);
}

double C(const ModelSpec& model, double q, const QuadratureRule& rule) {
  check_q01(q, "C");
  if (q == 0.0) return 0.0;
  return C1(model, q, rule) - C2(model, q);
}

double D(const ModelSpec& model, double q, const QuadratureRule& rule) {
  check_q01(q, "D");
  if (model.beta == 0.0) return -q;  // avoids the 0/0 ratio at Y = 0
  return tanh_sq_cosh_mean(rule, y_of(model, q)) - q;
}

double dC1_dq(const ModelSpec& model, double q, const QuadratureRule& rule) {
  check_q01(q, "dC1_dq");
  // E[sinh^2 cosh^-1]/E[cosh] is the tanh^2-weighted mean again.
  double mean = model.beta == 0.0 ? 0.0 : tanh_sq_cosh_mean(rule, y_of(model, q));
  return 0.5 * xi_pp(model, q) * (mean + 1.0);
}

double T(const ModelSpec& model, double u, const QuadratureRule& rule) {
  if (!(u > kTFloor))
    throw std::domain_error("T: u must exceed " + std::to_string(kTFloor) +
                            " (T diverges as u -> 0+)");
  if (!(model.beta > 0.0)) throw std::domain_error("T: requires beta > 0");
  double r = tanh_sq_cosh_mean(rule, y_of(model, u));
  return u / r - 1.0;
}

double a_k(const QuadratureRule& rule, double Y, int k) {
  if (k < -5 || k > 1) throw std::domain_error("a_k: k must lie in {-5, ..., 1}");
  if (!(Y >= 0.0)) throw std::domain_error("a_k: Y must be >= 0");
  if (k == 0 || Y == 0.0) return 1.0;
  // log E[cosh^k] via log-sum-exp; for k <= -1 every term is <= 1 already.
  double M = -std::numeric_limits<double>::infinity();
  auto x = rule.nodes();
  auto lw = rule.log_weights();
  int n = rule.order();
  std::vector<double> L(n, M);
  for (int i = 0; i < n; ++i) {
    if (lw[i] == -std::numeric_limits<double>::infinity()) continue;
    L[i] = k * num::log_cosh(Y * x[i]) + lw[i];
    if (L[i] > M) M = L[i];
  }
  double s = 0.0;
  for (double l : L)
    if (l != -std::numeric_limits<double>::infinity()) s += std::exp(l - M);
  return std::exp(M + std::log(s));
}

double G1(double t) {
  if (!(t >= 0.0 && t < 1.0)) throw std::domain_error("G1: t must lie in [0,1)");
  if (t == 0.0) return 0.0;
  double s = std::sqrt(1.0 - t * t);
  double denom = 1.0 + 2.0 * (1.0 - t * t) + 3.0 / (1.0 + 2.0 / s);
  return std::atanh(t) - 3.0 * t / denom;
}

double G2(double x, const QuadratureRule& rule) {
  if (!(x >= 0.0)) throw std::domain_error("G2: x must be >= 0");
  if (x == 0.0) return 0.0;
  double Y = std::sqrt(x);
  double m1 = cosh_weighted_mean(rule, Y, num::log_cosh);
  double m2 = cosh_weighted_mean(rule, Y, [](double s) {
    double l = num::log_cosh(s);
    return l * l;
  });
  return x - 2.0 * m1 + m2 - m1 * m1;
}

RsEval rs_eval(const ModelSpec& model, double q, const QuadratureRule& rule) {
  RsEval e;
  e.q = q;
  e.C1 = C1(model, q, rule);
  e.C2 = C2(model, q);
  e.C = q == 0.0 ? 0.0 : e.C1 - e.C2;
  e.D = D(model, q, rule);
  e.T = (q > kTFloor && model.beta > 0.0) ? T(model, q, rule)
                                          : std::numeric_limits<double>::quiet_NaN();
  e.dC_du = 0.5 * xi_pp(model, q) * e.D;
  return e;
}

}  // namespace pspin
