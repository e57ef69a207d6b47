#pragma once

#include <optional>

#include "pspin/cole_hopf.hpp"
#include "pspin/critical.hpp"
#include "pspin/model.hpp"
#include "pspin/quadrature.hpp"

namespace pspin {

/// First equation of the 1RSB system:
///   C1(m,q) = -(1/m^2) log E[cosh^m(Yq g)]
///             + (1/m) E[cosh^m log cosh]/E[cosh^m] - theta(q)/2.
/// Reduces to C(q) at m = 1.
double C1_1rsb(const ModelSpec& model, double m, double q, const QuadratureRule& rule);

/// Second equation: D1(m,q) = E[tanh^2 cosh^m]/E[cosh^m] - q, evaluated via
/// the exact split tanh^2 cosh^m = cosh^m - cosh^{m-2}. Reduces to D(q) at m = 1.
double D1_1rsb(const ModelSpec& model, double m, double q, const QuadratureRule& rule);

struct OneRsbSolution {
  double m;  // in (0, 1)
  double q;  // in (0, 1)
  double residual_C1;
  double residual_D1;
  int iterations;
};

/// Solves C1(m,q) = D1(m,q) = 0 for beta strictly above beta1 by damped
/// 2-d Newton (finite-difference Jacobian, step 1e-6), warm-started from
/// (1 - 1e-3, q1). Falls back to continuation in beta from just above the
/// threshold when the direct solve leaves its basin. Throws
/// below_transition_error for beta <= beta1 and no_window_error when Newton
/// fails or converges onto the m = 1 edge.
OneRsbSolution solve_1rsb(const ModelSpec& model, const QuadratureRule& rule,
                          std::optional<BoundarySolution> beta1_hint = std::nullopt,
                          std::optional<OneRsbSolution> warm_start = std::nullopt);

enum class Phase { RS, OneRSB, Unknown };

const char* to_string(Phase phase);

struct PhaseClassification {
  Phase phase;
  std::optional<OneRsbSolution> solution;  // present when the 1RSB solve converged
  CriterionCurve curve;                    // curve of the reported measure
  double parisi_value;                     // P of the reported measure
};

struct ClassifyOptions {
  int curve_grid_size = 2001;
  double curve_tolerance = 1e-7;
  std::optional<BoundarySolution> boundary;   // reuse across a sweep
  std::optional<OneRsbSolution> warm_start;   // continuation across a sweep
};

/// Phase of the Parisi measure at (p, beta): RS when C <= 0 at every D-root;
/// otherwise OneRSB when the 1RSB solve converges and its criterion curve is
/// admissible (f <= tolerance with zeros at both atoms); otherwise Unknown.
/// The theorem only guarantees 1RSB on a one-sided window above beta1, so
/// Unknown is the honest fallback, not an error.
PhaseClassification classify_phase(const ModelSpec& model, const QuadratureRule& rule,
                                   const ClassifyOptions& options = {});

}  // namespace pspin
