#include "pspin/quadrature.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "pspin/errors.hpp"

namespace pspin {

namespace num {

double log_cosh(double x) {
  double a = std::abs(x);
  return a + std::log1p(std::exp(-2.0 * a)) - std::numbers::ln2;
}

double sech(double x) {
  double e = std::exp(-std::abs(x));
  return 2.0 * e / (1.0 + e * e);
}

double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  double e = std::exp(x);
  return e / (1.0 + e);
}

}  // namespace num

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kLogDblMax = 709.78;

void check_finite(double v, const char* op, int node, double x) {
  if (!std::isfinite(v))
    throw evaluation_error(std::string(op) + ": non-finite integrand at node " +
                           std::to_string(node) + " (x = " + std::to_string(x) + ")");
}

}  // namespace

QuadratureRule QuadratureRule::gauss_hermite(int n) {
  if (n < 4 || n > 2048)
    throw std::invalid_argument("gauss_hermite: order must lie in [4, 2048], got " +
                                std::to_string(n));

  // Probabilists' Hermite recurrence He_{k+1} = x He_k - k He_{k-1}:
  // Jacobi matrix has zero diagonal and off-diagonal sqrt(k).
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd sub(n - 1);
  for (int k = 1; k < n; ++k) sub[k - 1] = std::sqrt(static_cast<double>(k));

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("gauss_hermite: eigen-decomposition failed");

  QuadratureRule rule;
  rule.nodes_.resize(n);
  rule.weights_.resize(n);
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    rule.nodes_[i] = es.eigenvalues()[i];
    double v = es.eigenvectors()(0, i);
    rule.weights_[i] = v * v;
    total += rule.weights_[i];
  }
  for (double& w : rule.weights_) w /= total;

  // Enforce the +/- node symmetry exactly; odd moments then cancel term by term.
  for (int i = 0; i < n / 2; ++i) {
    int j = n - 1 - i;
    double x = 0.5 * (rule.nodes_[i] - rule.nodes_[j]);
    rule.nodes_[i] = x;
    rule.nodes_[j] = -x;
    double w = 0.5 * (rule.weights_[i] + rule.weights_[j]);
    rule.weights_[i] = w;
    rule.weights_[j] = w;
  }
  if (n % 2 == 1) rule.nodes_[n / 2] = 0.0;

  rule.log_weights_.resize(n);
  for (int i = 0; i < n; ++i)
    rule.log_weights_[i] = rule.weights_[i] > 0.0 ? std::log(rule.weights_[i]) : kNegInf;
  return rule;
}

double expect(const QuadratureRule& rule, const std::function<double(double)>& f) {
  double acc = 0.0;
  auto x = rule.nodes();
  auto w = rule.weights();
  for (int i = 0; i < rule.order(); ++i) {
    double v = f(x[i]);
    check_finite(v, "expect", i, x[i]);
    acc += w[i] * v;
  }
  return acc;
}

double expect2d(const QuadratureRule& rule,
                const std::function<double(double, double)>& F) {
  double acc = 0.0;
  auto x = rule.nodes();
  auto w = rule.weights();
  for (int i = 0; i < rule.order(); ++i) {
    double inner = 0.0;
    for (int j = 0; j < rule.order(); ++j) {
      double v = F(x[i], x[j]);
      if (!std::isfinite(v))
        throw evaluation_error("expect2d: non-finite integrand at node pair (" +
                               std::to_string(i) + ", " + std::to_string(j) + ")");
      inner += w[j] * v;
    }
    acc += w[i] * inner;
  }
  return acc;
}

double cosh_weighted_mean(const QuadratureRule& rule, double Y,
                          const std::function<double(double)>& h) {
  if (!(Y >= 0.0)) throw std::domain_error("cosh_weighted_mean: Y must be >= 0");
  double acc = 0.0;
  auto x = rule.nodes();
  auto w = rule.weights();
  double s = Y * Y;
  for (int i = 0; i < rule.order(); ++i) {
    double vp = h(Y * x[i] + s);
    double vm = h(Y * x[i] - s);
    check_finite(vp, "cosh_weighted_mean", i, x[i]);
    check_finite(vm, "cosh_weighted_mean", i, x[i]);
    acc += w[i] * 0.5 * (vp + vm);
  }
  return acc;
}

double expect_cosh_weighted(const QuadratureRule& rule, double Y,
                            const std::function<double(double)>& h) {
  double mean = cosh_weighted_mean(rule, Y, h);
  double log_tilt = 0.5 * Y * Y;  // log E[cosh(Yg)]
  if (mean == 0.0) return 0.0;
  double total_log = log_tilt + std::log(std::abs(mean));
  if (total_log > kLogDblMax)
    throw std::overflow_error("expect_cosh_weighted: uncancelled result exceeds double range (Y = " +
                              std::to_string(Y) + ")");
  return std::copysign(std::exp(total_log), mean);
}

double tanh_sq_cosh_mean(const QuadratureRule& rule, double Y) {
  if (!(Y >= 0.0)) throw std::domain_error("tanh_sq_cosh_mean: Y must be >= 0");
  double es = 0.0;
  auto x = rule.nodes();
  auto w = rule.weights();
  for (int i = 0; i < rule.order(); ++i) es += w[i] * num::sech(Y * x[i]);
  return 1.0 - std::exp(-0.5 * Y * Y) * es;
}

namespace {

// Shared log-sum-exp core for the cosh^m expectations: returns
// (max exponent M, sum_i e^{L_i - M}, sum_i e^{L_i - M} h_i) with
// L_i = m log cosh(Y x_i) + log w_i.
struct PowSums {
  double M;
  double den;
  double num;
};

PowSums cosh_pow_sums(const QuadratureRule& rule, double Y, double m,
                      const std::function<double(double)>* h, const char* op) {
  auto x = rule.nodes();
  auto lw = rule.log_weights();
  int n = rule.order();
  std::vector<double> L(n, kNegInf);
  double M = kNegInf;
  for (int i = 0; i < n; ++i) {
    if (lw[i] == kNegInf) continue;
    L[i] = m * num::log_cosh(Y * x[i]) + lw[i];
    if (L[i] > M) M = L[i];
  }
  PowSums s{M, 0.0, 0.0};
  for (int i = 0; i < n; ++i) {
    if (L[i] == kNegInf) continue;
    double e = std::exp(L[i] - M);
    s.den += e;
    if (h) {
      double v = (*h)(Y * x[i]);
      check_finite(v, op, i, x[i]);
      s.num += e * v;
    }
  }
  return s;
}

void check_m(double m, const char* op) {
  if (!(m > 0.0 && m <= 1.0))
    throw std::domain_error(std::string(op) + ": m must lie in (0, 1]");
}

}  // namespace

double expect_cosh_pow(const QuadratureRule& rule, double Y, double m,
                       const std::function<double(double)>& h) {
  check_m(m, "expect_cosh_pow");
  if (!(Y >= 0.0)) throw std::domain_error("expect_cosh_pow: Y must be >= 0");
  if (m == 1.0) return expect_cosh_weighted(rule, Y, h);
  PowSums s = cosh_pow_sums(rule, Y, m, &h, "expect_cosh_pow");
  if (s.num == 0.0) return 0.0;
  double total_log = s.M + std::log(std::abs(s.num));
  if (total_log > kLogDblMax)
    throw std::overflow_error("expect_cosh_pow: uncancelled result exceeds double range (Y = " +
                              std::to_string(Y) + ")");
  return std::copysign(std::exp(total_log), s.num);
}

double cosh_pow_mean(const QuadratureRule& rule, double Y, double m,
                     const std::function<double(double)>& h) {
  check_m(m, "cosh_pow_mean");
  if (!(Y >= 0.0)) throw std::domain_error("cosh_pow_mean: Y must be >= 0");
  if (m == 1.0) return cosh_weighted_mean(rule, Y, h);
  PowSums s = cosh_pow_sums(rule, Y, m, &h, "cosh_pow_mean");
  return s.num / s.den;
}

double log_expect_cosh_pow(const QuadratureRule& rule, double Y, double m) {
  check_m(m, "log_expect_cosh_pow");
  if (!(Y >= 0.0)) throw std::domain_error("log_expect_cosh_pow: Y must be >= 0");
  if (m == 1.0) return 0.5 * Y * Y;
  PowSums s = cosh_pow_sums(rule, Y, m, nullptr, "log_expect_cosh_pow");
  return s.M + std::log(s.den);
}

}  // namespace pspin
