#pragma once

#include <stdexcept>

namespace pspin {

/// Pure p-spin mixture: xi(x) = beta^2 x^p.
///
/// Single source for xi and its derivatives; every other component takes a
/// ModelSpec instead of raw (p, beta). beta = 0 is a valid spec for plain
/// evaluation (the D_0 limit checks need it) but solvers reject it.
struct ModelSpec {
  int p;
  double beta;

  ModelSpec(int p_, double beta_);
};

double xi(const ModelSpec& model, double x);        // beta^2 x^p, x in [0,1]
double xi_prime(const ModelSpec& model, double x);  // beta^2 p x^(p-1), x >= 0
double xi_pp(const ModelSpec& model, double x);     // beta^2 p(p-1) x^(p-2), x >= 0

/// theta(q) = q xi'(q) - xi(q) = beta^2 (p-1) q^p. Doubles as the exact
/// antiderivative of s xi''(s): integral over [a,b] equals theta(b) - theta(a).
double theta(const ModelSpec& model, double q);

double y_of(const ModelSpec& model, double u);             // sqrt(xi'(u))
double y_diff(const ModelSpec& model, double a, double b); // sqrt(xi'(a) - xi'(b)), a > b

}  // namespace pspin
