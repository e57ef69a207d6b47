#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "pspin/model.hpp"
#include "pspin/rs_functions.hpp"

using namespace pspin;

namespace {

const QuadratureRule& rule() {
  static QuadratureRule r = QuadratureRule::gauss_hermite(200);
  return r;
}

// Ratio-of-means Monte Carlo with delta-method standard error.
struct RatioMc {
  double value;
  double stderr_;
};

template <typename FN, typename FD>
RatioMc mc_ratio(FN fnum, FD fden, int samples, unsigned seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  double sn = 0, sd = 0, snn = 0, sdd = 0, snd = 0;
  for (int i = 0; i < samples; ++i) {
    double g = normal(gen);
    double a = fnum(g), b = fden(g);
    sn += a;
    sd += b;
    snn += a * a;
    sdd += b * b;
    snd += a * b;
  }
  double n = samples;
  double mn = sn / n, md = sd / n;
  double vn = (snn / n - mn * mn) / (n - 1);
  double vd = (sdd / n - md * md) / (n - 1);
  double cnd = (snd / n - mn * md) / (n - 1);
  double r = mn / md;
  double var = (vn - 2.0 * r * cnd + r * r * vd) / (md * md);
  return {r, std::sqrt(std::max(var, 0.0))};
}

// Frozen by the boundary solver (stable to ~1e-8 across quadrature orders);
// only used here to pick test points safely inside each phase.
constexpr double kBeta1P3 = 1.0855431677;

}  // namespace

TEST_CASE("C basics") {
  ModelSpec m05(3, 0.5), m11(3, 1.1);
  CHECK(C(ModelSpec(3, 0.7), 0.0, rule()) == 0.0);
  CHECK(C(ModelSpec(7, 1.3), 0.0, rule()) == 0.0);
  CHECK(C(m11, 0.9, rule()) > 0.0);

  auto Y = y_of(m05, 0.5);
  auto mc = mc_ratio(
      [&](double g) { return std::cosh(Y * g) * num::log_cosh(Y * g); },
      [&](double g) { return std::cosh(Y * g); }, 10'000'000, 424242u);
  double c1_mc = mc.value;
  double c1_quad = C1(m05, 0.5, rule());
  CHECK(std::abs(c1_quad - c1_mc) <= 3.0 * mc.stderr_);
  CHECK(C(m05, 0.5, rule()) ==
        doctest::Approx(c1_quad - C2(m05, 0.5)).epsilon(1e-15));
}

TEST_CASE("D basics and the Example(1) ladder") {
  CHECK(D(ModelSpec(3, 0.0), 0.3, rule()) == -0.3);
  CHECK(D(ModelSpec(5, 0.0), 0.77, rule()) == -0.77);

  ModelSpec m(3, 1.05);
  double d1 = D(m, 0.733, rule());
  double d2 = D(m, 0.735, rule());
  double d3 = D(m, 0.739, rule());
  double d4 = D(m, 0.740, rule());
  CHECK(d1 > d2);
  CHECK(d2 > 0.0);
  CHECK(0.0 > d3);
  CHECK(d3 > d4);

  for (double beta : {0.5, 1.0, 2.0}) CHECK(D(ModelSpec(3, beta), 1.0, rule()) < 0.0);
}

TEST_CASE("C1/C2 split") {
  CHECK(C1(ModelSpec(3, 1.0), 0.0, rule()) == 0.0);
  CHECK(C2(ModelSpec(3, 1.0), 0.0) == 0.0);

  ModelSpec m(3, 1.05);
  CHECK(C1(m, 0.739, rule()) - C2(m, 0.735) < 0.0);

  // C2 closed form at (p=3, beta=1, q=0.5): xi'(q)/2 + theta(q)/2.
  ModelSpec unit(3, 1.0);
  CHECK(C2(unit, 0.5) == doctest::Approx(0.5 * (3.0 * 0.25) + 0.5 * (2.0 * 0.125)).epsilon(1e-15));
}

TEST_CASE("dC1_dq positive and matches finite differences") {
  ModelSpec m(3, 1.05);
  CHECK(dC1_dq(m, 0.4, rule()) > 0.0);
  CHECK(dC1_dq(m, 0.0, rule()) == 0.0);  // xi''(0) = 0 for p >= 3

  double q = 0.7, h = 1e-6;
  double fd = (C1(m, q + h, rule()) - C1(m, q - h, rule())) / (2.0 * h);
  double an = dC1_dq(m, q, rule());
  CHECK(std::abs(fd - an) / std::abs(an) <= 1e-6);
}

TEST_CASE("T floor, divergence, lower bound, sign relation") {
  ModelSpec m(3, 1.0);
  CHECK_THROWS_AS(T(m, 0.0, rule()), std::domain_error);
  CHECK_THROWS_AS(T(m, 1e-9, rule()), std::domain_error);
  CHECK(T(m, 1e-3, rule()) > 10.0);
  CHECK(T(m, 3.0, rule()) > 2.0);

  ModelSpec m105(3, 1.05);
  for (double u : {0.5, 0.737, 0.9}) {
    double t = T(m105, u, rule());
    double d = D(m105, u, rule());
    if (std::abs(d) > 1e-9) CHECK(std::signbit(t) != std::signbit(d));
  }
}

TEST_CASE("a_k") {
  for (int k = -5; k <= 1; ++k) CHECK(a_k(rule(), 0.0, k) == 1.0);
  CHECK(a_k(rule(), 1.0, 1) == doctest::Approx(std::exp(0.5)).epsilon(1e-12));
  CHECK_THROWS_AS(a_k(rule(), 1.0, 2), std::domain_error);
  CHECK_THROWS_AS(a_k(rule(), 1.0, -6), std::domain_error);

  // d a_1 / dY = Y a_1.
  double Y = 1.3, h = 1e-6;
  double fd = (a_k(rule(), Y + h, 1) - a_k(rule(), Y - h, 1)) / (2.0 * h);
  CHECK(std::abs(fd - Y * a_k(rule(), Y, 1)) <= 1e-7);

  // Chain rule consistency for a negative power.
  double v = a_k(rule(), 2.0, -3);
  double direct = expect(rule(), [](double g) { return std::pow(num::sech(2.0 * g), 3); });
  CHECK(v == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("G1") {
  CHECK(G1(0.0) == 0.0);
  CHECK(G1(0.5) > 0.0);
  CHECK(G1(0.99) > 0.2);
  CHECK(G1(0.999999) > 5.0);  // diverges toward t = 1
  CHECK_THROWS_AS(G1(1.0), std::domain_error);
  CHECK_THROWS_AS(G1(-0.1), std::domain_error);

  double min_v = 1e300;
  for (int i = 1; i <= 999; ++i) min_v = std::min(min_v, G1(i / 1000.0));
  CHECK(min_v > 0.0);
}

TEST_CASE("G2") {
  CHECK(G2(0.0, rule()) == 0.0);
  CHECK(G2(1.0, rule()) > 0.0);
  for (double x : {0.5, 5.0, 20.0}) {
    double h = 1e-5;
    CHECK((G2(x + h, rule()) - G2(x - h, rule())) / (2.0 * h) > 0.0);
  }
}

TEST_CASE("compderiv identity on a spot grid") {
  // The full 101 x 9 sweep runs in the acceptance suite at order 400 where
  // quadrature noise is negligible; this covers a representative slice.
  QuadratureRule r400 = QuadratureRule::gauss_hermite(400);
  for (auto [p, beta] : {std::pair{3, 1.0}, {4, 1.5}, {10, 0.5}}) {
    ModelSpec m(p, beta);
    for (double q : {0.05, 0.35, 0.65, 0.95}) {
      double h = 1e-6;
      double fd = (C(m, q + h, r400) - C(m, q - h, r400)) / (2.0 * h);
      double an = 0.5 * xi_pp(m, q) * D(m, q, r400);
      CHECK(std::abs(fd - an) <= 1e-6);
    }
  }
}

TEST_CASE("T convexity and zero structure") {
  const double h = 1e-4;
  for (int p : {3, 4, 10}) {
    for (double beta : {0.5, 1.0, 1.5}) {
      ModelSpec m(p, beta);
      int prev_sign = 0, value_flips = 0;
      double prev_t = 0.0;
      bool have_prev = false;
      int diff_flips = 0;
      int prev_diff_sign = 0;
      for (int i = 0; i <= 90; ++i) {
        double u = 0.05 + 0.01 * i;
        double d2 = (T(m, u + h, rule()) - 2.0 * T(m, u, rule()) + T(m, u - h, rule())) /
                    (h * h);
        CHECK(d2 >= -1e-6);

        double t = T(m, u, rule());
        int s = t > 0.0 ? 1 : (t < 0.0 ? -1 : 0);
        if (prev_sign != 0 && s != 0 && s != prev_sign) ++value_flips;
        if (s != 0) prev_sign = s;

        if (have_prev) {
          double diff = t - prev_t;
          int ds = diff > 0.0 ? 1 : (diff < 0.0 ? -1 : 0);
          if (prev_diff_sign != 0 && ds != 0 && ds != prev_diff_sign) ++diff_flips;
          if (ds != 0) prev_diff_sign = ds;
        }
        prev_t = t;
        have_prev = true;
      }
      // Zeros of T come in pairs (or not at all); its slope, being the slope
      // of a convex function, changes direction at most once.
      CHECK((value_flips == 0 || value_flips == 2));
      CHECK(diff_flips <= 1);
    }
  }
}

TEST_CASE("C nonpositive below the transition") {
  ModelSpec m(3, 0.9 * kBeta1P3);
  for (int i = 0; i <= 1000; ++i) {
    double q = i / 1000.0;
    CHECK(C(m, q, rule()) <= 0.0);
  }
}

TEST_CASE("rs_eval bundle invariants") {
  ModelSpec m(3, 1.05);
  for (double q : {0.3, 0.737, 0.9}) {
    RsEval e = rs_eval(m, q, rule());
    CHECK(e.C == e.C1 - e.C2);
    CHECK(e.dC_du == doctest::Approx(0.5 * xi_pp(m, q) * e.D).epsilon(1e-12));
    if (std::abs(e.D) > 1e-9) CHECK(std::signbit(e.T) != std::signbit(e.D));
  }
  RsEval origin = rs_eval(m, 0.0, rule());
  CHECK(origin.C == 0.0);
  CHECK(std::isnan(origin.T));
}
