#include "pspin/sturm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "pspin/rs_functions.hpp"

namespace pspin::sturm {

Polynomial::Polynomial(std::vector<Rational> ascending_coefficients)
    : coeffs_(std::move(ascending_coefficients)) {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Polynomial Polynomial::from_ints(std::initializer_list<long long> ascending) {
  std::vector<Rational> c;
  c.reserve(ascending.size());
  for (long long v : ascending) c.emplace_back(v);
  return Polynomial(std::move(c));
}

Rational Polynomial::operator()(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return Polynomial();
  std::vector<Rational> d(coeffs_.size() - 1);
  for (size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<int>(i);
  return Polynomial(std::move(d));
}

Polynomial Polynomial::operator-() const {
  std::vector<Rational> c = coeffs_;
  for (Rational& v : c) v = -v;
  return Polynomial(std::move(c));
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
  std::vector<Rational> c(std::max(coeffs_.size(), other.coeffs_.size()), Rational(0));
  for (size_t i = 0; i < coeffs_.size(); ++i) c[i] += coeffs_[i];
  for (size_t i = 0; i < other.coeffs_.size(); ++i) c[i] += other.coeffs_[i];
  return Polynomial(std::move(c));
}

Polynomial Polynomial::operator-(const Polynomial& other) const {
  return *this + (-other);
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
  if (is_zero() || other.is_zero()) return Polynomial();
  std::vector<Rational> c(coeffs_.size() + other.coeffs_.size() - 1, Rational(0));
  for (size_t i = 0; i < coeffs_.size(); ++i)
    for (size_t j = 0; j < other.coeffs_.size(); ++j) c[i + j] += coeffs_[i] * other.coeffs_[j];
  return Polynomial(std::move(c));
}

Polynomial Polynomial::remainder(const Polynomial& divisor) const {
  if (divisor.is_zero()) throw std::invalid_argument("Polynomial: division by zero polynomial");
  std::vector<Rational> rem = coeffs_;
  const auto& d = divisor.coeffs_;
  while (rem.size() >= d.size() && !rem.empty()) {
    Rational factor = rem.back() / d.back();
    size_t offset = rem.size() - d.size();
    for (size_t i = 0; i < d.size(); ++i) rem[offset + i] -= factor * d[i];
    while (!rem.empty() && rem.back() == 0) rem.pop_back();
    if (rem.size() < d.size()) break;
  }
  return Polynomial(std::move(rem));
}

std::vector<Polynomial> sturm_sequence(const Polynomial& poly) {
  if (poly.is_zero() || poly.degree() < 1)
    throw std::invalid_argument("sturm_sequence: polynomial must be nonconstant");
  std::vector<Polynomial> chain;
  chain.push_back(poly);
  chain.push_back(poly.derivative());
  while (!chain.back().is_zero()) {
    Polynomial r = chain[chain.size() - 2].remainder(chain.back());
    if (r.is_zero()) break;
    chain.push_back(-r);
  }
  return chain;
}

namespace {

int sign_of(const Rational& v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

int variations(const std::vector<Polynomial>& chain, const Rational& x) {
  int count = 0;
  int last = 0;
  for (const Polynomial& p : chain) {
    int s = sign_of(p(x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

Rational shrink_off_root(const Polynomial& poly, Rational x, const Rational& toward,
                         bool* shifted) {
  Rational gap = toward > x ? Rational(toward - x) : Rational(x - toward);
  Rational half = gap / 2;
  Rational step = half < Rational(1, 1024) ? half : Rational(1, 1024);
  while (poly(x) == 0) {
    if (shifted) *shifted = true;
    x += toward > x ? step : -step;
    step /= 2;
  }
  return x;
}

}  // namespace

int count_roots(const Polynomial& poly, const Rational& a, const Rational& b,
                bool* endpoint_shifted) {
  if (!(a < b)) throw std::invalid_argument("count_roots: requires a < b");
  if (endpoint_shifted) *endpoint_shifted = false;
  Rational lo = shrink_off_root(poly, a, b, endpoint_shifted);
  Rational hi = shrink_off_root(poly, b, a, endpoint_shifted);
  std::vector<Polynomial> chain = sturm_sequence(poly);
  return variations(chain, lo) - variations(chain, hi);
}

namespace {

void isolate_rec(const Polynomial& poly, const std::vector<Polynomial>& chain,
                 const Rational& a, const Rational& b, int count, const Rational& width_cap,
                 std::vector<std::pair<Rational, Rational>>& out) {
  if (count == 0) return;
  if (count == 1 && b - a <= width_cap) {
    out.emplace_back(a, b);
    return;
  }
  Rational mid = (a + b) / 2;
  bool dummy = false;
  Rational m = shrink_off_root(poly, mid, b, &dummy);
  int left = variations(chain, a) - variations(chain, m);
  isolate_rec(poly, chain, a, m, left, width_cap, out);
  isolate_rec(poly, chain, m, b, count - left, width_cap, out);
}

}  // namespace

std::vector<std::pair<Rational, Rational>> isolate_roots(const Polynomial& poly,
                                                         const Rational& a,
                                                         const Rational& b) {
  bool shifted = false;
  Rational lo = shrink_off_root(poly, a, b, &shifted);
  Rational hi = shrink_off_root(poly, b, a, &shifted);
  std::vector<Polynomial> chain = sturm_sequence(poly);
  int total = variations(chain, lo) - variations(chain, hi);
  std::vector<std::pair<Rational, Rational>> out;
  isolate_rec(poly, chain, lo, hi, total, Rational(1, 1000000), out);
  std::sort(out.begin(), out.end(),
            [](const auto& u, const auto& v) { return u.first < v.first; });
  return out;
}

Polynomial g1_critical_quintic() {
  return Polynomial::from_ints({27, -153, 324, -309, 90, 25});
}

Polynomial g1_slope_poly_a() {
  // 5t^10 - 6t^8 - 51t^6 + 117t^4 - 90t^2 + 27
  return Polynomial::from_ints({27, 0, -90, 0, 117, 0, -51, 0, -6, 0, 5});
}

Polynomial g1_slope_poly_b() {
  // 36t^6 - 99t^4 + 81t^2 - 27
  return Polynomial::from_ints({-27, 0, 81, 0, -99, 0, 36});
}

bool verify_g1_slope_identity() {
  Polynomial A = g1_slope_poly_a();
  Polynomial B = g1_slope_poly_b();
  Polynomial one_minus_t2 = Polynomial::from_ints({1, 0, -1});
  Polynomial lhs = A * A - one_minus_t2 * (B * B);

  // q(t^2) with q the quintic, then times t^2 (t^4 - 3t^2 + 3)^2.
  const Polynomial q = g1_critical_quintic();
  std::vector<Rational> q_t2(2 * q.degree() + 1, Rational(0));
  for (int i = 0; i <= q.degree(); ++i) q_t2[2 * i] = q.coefficients()[i];
  Polynomial factor = Polynomial::from_ints({3, 0, -3, 0, 1});
  Polynomial rhs = Polynomial::from_ints({0, 0, 1}) * factor * factor * Polynomial(q_t2);
  return lhs == rhs;
}

G1StructureReport verify_g1_structure() {
  G1StructureReport rep{};

  rep.positive_on_grid = true;
  rep.min_on_grid = std::numeric_limits<double>::infinity();
  for (int i = 1; i <= 999; ++i) {
    double v = G1(i / 1000.0);
    rep.min_on_grid = std::min(rep.min_on_grid, v);
    if (!(v > 0.0)) rep.positive_on_grid = false;
  }

  auto slope = [](double t) {
    const double h = 1e-7;
    return (G1(t + h) - G1(t - h)) / (2.0 * h);
  };
  rep.max_in_first_interval = slope(0.65) > 0.0 && slope(0.66) < 0.0;
  rep.min_in_second_interval = slope(0.94) < 0.0 && slope(0.95) > 0.0;

  double t = 0.95;
  rep.interval_bound =
      std::atanh(0.94) -
      3.0 * t / (1.0 + 2.0 * (1.0 - t * t) + 3.0 / (1.0 + 2.0 / std::sqrt(1.0 - t * t)));
  rep.interval_bound_positive = rep.interval_bound > 0.0;

  rep.direct_interval_min = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 2000; ++i)
    rep.direct_interval_min = std::min(rep.direct_interval_min, G1(0.94 + 0.01 * i / 2000.0));

  rep.ok = rep.positive_on_grid && rep.max_in_first_interval &&
           rep.min_in_second_interval && rep.direct_interval_min > 0.0;
  return rep;
}

}  // namespace pspin::sturm
