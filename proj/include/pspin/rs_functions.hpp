#pragma once

#include "pspin/model.hpp"
#include "pspin/quadrature.hpp"

namespace pspin {

/// Floor below which T(u) is refused: the u -> 0+ limit is a 0/0 form whose
/// value (+infinity) comes from L'Hopital, not from floating arithmetic.
inline constexpr double kTFloor = 1e-8;

/// Replica-symmetric criterion function
///   C(q) = E[cosh(Yg) log cosh(Yg)] / E[cosh(Yg)] - xi'(q)/2 - theta(q)/2,
/// Y = sqrt(xi'(q)). Zero at q = 0 by construction (short-circuited).
double C(const ModelSpec& model, double q, const QuadratureRule& rule);

/// D(q) = E[tanh^2(Yg) cosh(Yg)] / E[cosh(Yg)] - q; exactly -q at beta = 0.
double D(const ModelSpec& model, double q, const QuadratureRule& rule);

/// The two halves of C: C = C1 - C2 identically.
double C1(const ModelSpec& model, double q, const QuadratureRule& rule);
double C2(const ModelSpec& model, double q);  // xi'(q)/2 + theta(q)/2, closed form

/// dC1/dq = (xi''(q)/2) (E[sinh^2 cosh^-1]/E[cosh] + 1); strictly positive
/// for q, beta > 0.
double dC1_dq(const ModelSpec& model, double q, const QuadratureRule& rule);

/// Pivot function T(u) = u E[cosh(Yg)] / E[tanh^2(Yg) cosh(Yg)] - 1.
/// Requires u > kTFloor (domain_error below; T diverges to +inf as u -> 0+).
double T(const ModelSpec& model, double u, const QuadratureRule& rule);

/// a_k = E[cosh^k(Yg)] for k in {-5, ..., 1}, log-space stable.
double a_k(const QuadratureRule& rule, double Y, int k);

/// G1(t) = arctanh t - 3t / (1 + 2(1 - t^2) + 3/(1 + 2/sqrt(1 - t^2))),
/// 0 <= t < 1. Positive on (0,1); diverges as t -> 1.
double G1(double t);

/// G2(x) = x - 2 m1 + m2 - m1^2 with m1 = E[cosh log cosh]/E[cosh],
/// m2 = E[cosh (log cosh)^2]/E[cosh] at Y = sqrt(x). Equals the m-derivative
/// of the 1RSB C1 at m = 1 evaluated at x = xi'(q); zero at x = 0 and
/// strictly increasing.
double G2(double x, const QuadratureRule& rule);

/// Bundle of the q-slice values; the invariants tie the fields together
/// (C = C1 - C2, dC_du = (xi''/2) D, sign T = -sign D).
struct RsEval {
  double q;
  double C;
  double D;
  double C1;
  double C2;
  double T;  // NaN for q <= kTFloor
  double dC_du;
};

RsEval rs_eval(const ModelSpec& model, double q, const QuadratureRule& rule);

}  // namespace pspin
