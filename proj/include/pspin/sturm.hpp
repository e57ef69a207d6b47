#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <utility>
#include <vector>

namespace pspin::sturm {

using Rational = boost::multiprecision::cpp_rational;

/// Univariate polynomial with exact rational coefficients, ascending degree.
/// Canonical form strips trailing zero coefficients; the zero polynomial has
/// an empty coefficient list. Sign counting stays exact end to end: no
/// floating arithmetic anywhere in this module.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> ascending_coefficients);
  static Polynomial from_ints(std::initializer_list<long long> ascending_coefficients);

  bool is_zero() const { return coeffs_.empty(); }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }  // -1 for zero
  const std::vector<Rational>& coefficients() const { return coeffs_; }

  Rational operator()(const Rational& x) const;  // Horner evaluation
  Polynomial derivative() const;

  Polynomial operator-() const;
  Polynomial operator+(const Polynomial& other) const;
  Polynomial operator-(const Polynomial& other) const;
  Polynomial operator*(const Polynomial& other) const;
  bool operator==(const Polynomial& other) const = default;

  /// Remainder of *this divided by divisor (exact long division).
  Polynomial remainder(const Polynomial& divisor) const;

 private:
  std::vector<Rational> coeffs_;
};

/// Canonical Sturm chain p, p', then negated remainders until zero. Repeated
/// roots leave a nonconstant gcd as the final element; the sign-variation
/// count still yields the number of distinct roots because dividing the whole
/// chain by that gcd changes no sign pattern at non-root evaluation points.
std::vector<Polynomial> sturm_sequence(const Polynomial& poly);

/// Exact count of distinct real roots in (a, b] by sign-variation difference.
/// A root at an endpoint is handled by shrinking the endpoint inward by 1/N
/// with N doubling until the evaluation is nonzero; `endpoint_shifted`, when
/// given, reports whether that happened.
int count_roots(const Polynomial& poly, const Rational& a, const Rational& b,
                bool* endpoint_shifted = nullptr);

/// Disjoint isolating intervals, one distinct root each, each of width
/// <= 1e-6, found by Sturm-guided bisection of (a, b].
std::vector<std::pair<Rational, Rational>> isolate_roots(const Polynomial& poly,
                                                         const Rational& a,
                                                         const Rational& b);

/// The quintic 25t^5 + 90t^4 - 309t^3 + 324t^2 - 153t + 27 whose roots in
/// [0,1] locate the critical points of G1 (as roots of q(t^2)).
Polynomial g1_critical_quintic();

/// The two polynomials A, B with G1'(t) proportional to sqrt(1-t^2) B(t) + A(t).
Polynomial g1_slope_poly_a();
Polynomial g1_slope_poly_b();

/// Exact identity A^2 - (1-t^2) B^2 = t^2 (t^4 - 3t^2 + 3)^2 q(t^2), the step
/// reducing G1' = 0 to the quintic. Verified by expanding both sides.
bool verify_g1_slope_identity();

/// Numeric + exact structure report for G1: positivity on a 999-point grid of
/// (0,1), a slope sign change + to - inside [0.65, 0.66] (local maximum) and
/// - to + inside [0.94, 0.95] (local minimum), the direct minimum of G1 over
/// the critical interval, and the closed-form interval bound
/// arctanh(0.94) - 3*0.95 / (1 + 2(1-0.95^2) + 3/(1 + 2/sqrt(1-0.95^2))).
/// That displayed bound evaluates negative (about -0.043), so the verdict
/// relies on the direct interval minimum instead; the bound value is carried
/// as a witness.
struct G1StructureReport {
  bool positive_on_grid;
  double min_on_grid;
  bool max_in_first_interval;   // slope + at 0.65, - at 0.66
  bool min_in_second_interval;  // slope - at 0.94, + at 0.95
  double interval_bound;        // the closed-form bound above (negative)
  bool interval_bound_positive;
  double direct_interval_min;   // min of G1 on [0.94, 0.95], the usable bound
  bool ok;  // positivity + both critical-point localizations + direct min > 0
};

G1StructureReport verify_g1_structure();

}  // namespace pspin::sturm
