#include "pspin/model.hpp"

#include <cmath>
#include <string>

namespace pspin {
namespace {

// x^e with the exponent applied in log space once e is large and x sits near 1;
// bare pow drifts in the last digits for q^(p-1) at p >= 15, q ~ 1 - 1e-7.
double pow_real(double x, double e) {
  if (x == 0.0) return e == 0.0 ? 1.0 : 0.0;
  if (x == 1.0 || e == 0.0) return x == 1.0 ? 1.0 : 1.0;
  if (e >= 14.0 && x > 0.5) return std::exp(e * std::log1p(x - 1.0));
  return std::pow(x, e);
}

}  // namespace

ModelSpec::ModelSpec(int p_, double beta_) : p(p_), beta(beta_) {
  if (p_ < 2) throw std::invalid_argument("ModelSpec: p must be >= 2, got " + std::to_string(p_));
  if (!(beta_ >= 0.0) || !std::isfinite(beta_))
    throw std::invalid_argument("ModelSpec: beta must be finite and >= 0");
}

double xi(const ModelSpec& model, double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("xi: x must lie in [0,1]");
  return model.beta * model.beta * pow_real(x, model.p);
}

double xi_prime(const ModelSpec& model, double x) {
  if (!(x >= 0.0)) throw std::domain_error("xi_prime: x must be >= 0");
  return model.beta * model.beta * model.p * pow_real(x, model.p - 1);
}

double xi_pp(const ModelSpec& model, double x) {
  if (!(x >= 0.0)) throw std::domain_error("xi_pp: x must be >= 0");
  if (model.p == 2) return 2.0 * model.beta * model.beta;
  return model.beta * model.beta * model.p * (model.p - 1) * pow_real(x, model.p - 2);
}

double theta(const ModelSpec& model, double q) {
  if (!(q >= 0.0 && q <= 1.0)) throw std::domain_error("theta: q must lie in [0,1]");
  return model.beta * model.beta * (model.p - 1) * pow_real(q, model.p);
}

double y_of(const ModelSpec& model, double u) {
  return std::sqrt(xi_prime(model, u));
}

double y_diff(const ModelSpec& model, double a, double b) {
  if (!(a > b && b >= 0.0)) throw std::domain_error("y_diff: requires a > b >= 0");
  double d = xi_prime(model, a) - xi_prime(model, b);
  return d > 0.0 ? std::sqrt(d) : 0.0;
}

}  // namespace pspin
