#pragma once

#include <vector>

#include "pspin/model.hpp"
#include "pspin/quadrature.hpp"

namespace pspin {

/// Finite-atom probability measure on [0,1). Stores atoms as (location, mass)
/// with strictly increasing locations and masses summing to 1; exposes the
/// induced step-function triplet (k, cumulative masses, locations) with
/// m_0 = 0, m_{k+1} = 1, q_0 = 0, q_{k+2} = 1.
class DiscreteMeasure {
 public:
  struct Atom {
    double location;  // in [0, 1)
    double mass;      // in (0, 1]
  };

  explicit DiscreteMeasure(std::vector<Atom> atoms);

  static DiscreteMeasure dirac_origin() { return DiscreteMeasure({{0.0, 1.0}}); }
  /// The 1RSB family: mass m at 0, mass 1-m at q.
  static DiscreteMeasure two_atom(double m, double q) {
    return DiscreteMeasure({{0.0, m}, {q, 1.0 - m}});
  }

  const std::vector<Atom>& atoms() const { return atoms_; }
  int k() const { return static_cast<int>(atoms_.size()) - 1; }
  /// Level locations q_0 = 0 <= q_1 < ... < q_{k+1} < q_{k+2} = 1.
  const std::vector<double>& levels() const { return levels_; }
  /// Cumulative masses m_0 = 0 <= m_1 < ... <= m_{k+1} = 1.
  const std::vector<double>& cumulative() const { return cumulative_; }

 private:
  std::vector<Atom> atoms_;
  std::vector<double> levels_;
  std::vector<double> cumulative_;
};

/// Parisi PDE solution at the origin, Phi(0,0), via the closed-form recursion
/// for step-function distributions: innermost level log cosh x plus the
/// [xi'(1) - xi'(q_{k+1})]/2 shift, then one log E exp(m_p Phi) layer per
/// atom (log-sum-exp on the quadrature grid; plain mean at mass level 0).
/// Cost grows as order^k; measures with more than 3 atoms are refused.
double phi_at_origin(const DiscreteMeasure& measure, const ModelSpec& model,
                     const QuadratureRule& rule);

/// P(mu) = log 2 + Phi(0,0) - (1/2) integral of alpha(s) s xi''(s) ds, the
/// correction integral summed exactly for step functions via theta.
double parisi_functional(const DiscreteMeasure& measure, const ModelSpec& model,
                         const QuadratureRule& rule);

/// Criterion function of the Dirac mass at the origin: f(u) = C(u).
double f_rs(const ModelSpec& model, double u, const QuadratureRule& rule);

/// Gamma of the two-atom measure (mass m at 0, mass 1-m at q), both branches:
/// the cosh^{m-1}-weighted single-tilt form on [q,1] and the nested
/// E1[E2[tanh cosh^m]^2 / E2[cosh^m]] form on [0,q). Continuous at u = q;
/// the left branch is used at u = q exactly.
double gamma_1rsb(const ModelSpec& model, double m, double q, double u,
                  const QuadratureRule& rule);

/// Criterion function of the two-atom measure, normalized to vanish at u = q.
/// Satisfies f(u) = C(u) - C(q) at m = 1 and f(0) = -C1_1rsb(m, q); zero at
/// both atoms exactly when (m, q) solves the 1RSB system.
double f_1rsb(const ModelSpec& model, double m, double q, double u,
              const QuadratureRule& rule);

/// f sampled on a uniform grid of [0,1] plus the atom locations.
struct CriterionCurve {
  std::vector<double> grid;
  std::vector<double> f_values;
  double max_violation;                // max of f_values
  std::vector<bool> zeros_at_support;  // |f(atom)| <= tolerance, per atom
  double tolerance;

  bool admissible() const;  // max_violation <= tolerance and all atoms flagged
};

/// Supported measures: the Dirac mass at the origin, or two atoms with the
/// first at the origin (the closed-form f exists only for these).
CriterionCurve criterion_curve(const DiscreteMeasure& measure, const ModelSpec& model,
                               int grid_size, const QuadratureRule& rule,
                               double tolerance = 1e-7);

}  // namespace pspin
