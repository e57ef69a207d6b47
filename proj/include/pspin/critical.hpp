#pragma once

#include <array>
#include <vector>

#include "pspin/model.hpp"
#include "pspin/quadrature.hpp"

namespace pspin {

/// Outcome of the bracketing test for the first critical temperature:
/// beta1 lies in [beta_low, beta_high] when (1a) the D probes straddle the
/// upper root in the stated order, (1b) C1 at the third probe stays below C2
/// at the second, and (2) C at beta_high is positive somewhere.
struct CriterionReport {
  int p;
  double beta_low;
  double beta_high;
  std::array<double, 4> d_values;  // D at (q01, q02, q11, q12), at beta_low
  bool cond_1a;
  double c1_minus_c2;  // C1(q11) - C2(q02) at beta_low
  bool cond_1b;
  double c_at_q2;  // C(q2) at beta_high
  bool cond_2;
  bool verdict;  // cond_1a && cond_1b && cond_2
};

/// Probe layout for check_criterion: 0 < q01 < q02 < q11 < q12 < 1 and the
/// positivity witness q2 in (0,1).
struct ProbePoints {
  double q01;
  double q02;
  double q11;
  double q12;
  double q2;
};

/// Solution of the boundary system C(beta, q) = D(beta, q) = 0.
struct BoundarySolution {
  int p;
  double beta1;
  double q1;
  double residual_C;
  double residual_D;
  double bracket_width;
};

/// All zeros of D in (0,1), ascending. Sign-scans a 4001-point grid (with
/// log-refined spacing near 1 for p >= 10, where the roots sit at 1 - O(1e-7))
/// and bisects each bracket to 1e-12. When the scan sees no sign change the
/// local maximum of D is polished; a positive maximum yields the two roots
/// around it, |D| < 1e-10 at the maximum is reported as the tangency double
/// root. At most two zeros exist.
std::vector<double> d_roots(const ModelSpec& model, const QuadratureRule& rule);

CriterionReport check_criterion(int p, double beta_low, double beta_high,
                                const ProbePoints& probes, const QuadratureRule& rule);

/// Locates (beta1, q1) by bisection in beta on C evaluated at the larger
/// D-root; monotonicity of C in beta at the crossing makes the root simple.
/// Throws no_transition_error for p = 2 and bracket_error if no sign change
/// appears for beta in (0, 10].
BoundarySolution solve_boundary(int p, const QuadratureRule& rule);

/// RS test: C <= 1e-9 at every zero of D (vacuously true without zeros).
bool classify_rs(const ModelSpec& model, const QuadratureRule& rule);

}  // namespace pspin
