#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pspin/model.hpp"

using namespace pspin;

namespace {

// Independent power routine for the oracle comparisons: plain repeated
// multiplication, no pow.
double pow_by_mult(double x, int e) {
  double acc = 1.0;
  for (int i = 0; i < e; ++i) acc *= x;
  return acc;
}

// Adaptive Simpson for the theta antiderivative oracle.
double simpson(const std::function<double(double)>& f, double a, double b, int n) {
  double h = (b - a) / n;
  double acc = f(a) + f(b);
  for (int i = 1; i < n; ++i) acc += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return acc * h / 3.0;
}

}  // namespace

TEST_CASE("construction validates p and beta") {
  CHECK_NOTHROW(ModelSpec(2, 0.0));
  CHECK_NOTHROW(ModelSpec(20, 1.15));
  CHECK_THROWS_AS(ModelSpec(1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(ModelSpec(0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(ModelSpec(3, -0.5), std::invalid_argument);
}

TEST_CASE("xi basic values") {
  CHECK(xi(ModelSpec(3, 1.0), 0.0) == 0.0);
  CHECK(xi(ModelSpec(3, 2.0), 1.0) == 4.0);
  ModelSpec m(3, 1.05);
  CHECK(xi(m, 0.5) == doctest::Approx(1.05 * 1.05 * pow_by_mult(0.5, 3)).epsilon(1e-15));
  CHECK_THROWS_AS(xi(m, -0.1), std::domain_error);
  CHECK_THROWS_AS(xi(m, 1.1), std::domain_error);
}

TEST_CASE("xi derivatives") {
  CHECK(xi_prime(ModelSpec(3, 1.0), 0.0) == 0.0);
  CHECK(xi_pp(ModelSpec(2, 1.0), 0.7) == 2.0);

  // Finite-difference check of xi' at the p = 20 example point, step 1e-7.
  ModelSpec m(20, 1.15);
  double x = 0.9999994;
  double h = 1e-7;
  double fd = (xi(m, x + h) - xi(m, x - h)) / (2.0 * h);
  CHECK(std::abs(fd - xi_prime(m, x)) / xi_prime(m, x) < 1e-5);
}

TEST_CASE("theta values and antiderivative identity") {
  CHECK(theta(ModelSpec(7, 2.0), 0.0) == 0.0);
  CHECK(theta(ModelSpec(3, 1.0), 1.0) == doctest::Approx(2.0).epsilon(1e-15));

  for (auto [p, beta] : {std::pair{3, 1.05}, {4, 0.7}, {10, 1.5}}) {
    ModelSpec m(p, beta);
    double integral = simpson([&](double s) { return s * xi_pp(m, s); }, 0.0, 1.0, 20000);
    CHECK(std::abs(integral - (theta(m, 1.0) - theta(m, 0.0))) < 1e-10);
  }
}

TEST_CASE("y_of and y_diff") {
  ModelSpec m(3, 1.05);
  CHECK(y_of(m, 0.0) == 0.0);
  CHECK(y_diff(m, 1.0, 0.0) == y_of(m, 1.0));
  CHECK(y_of(m, 0.735) ==
        doctest::Approx(std::sqrt(1.05 * 1.05 * 3.0 * 0.735 * 0.735)).epsilon(1e-15));
  CHECK_THROWS_AS(y_diff(m, 0.5, 0.5), std::domain_error);
  CHECK_THROWS_AS(y_diff(m, 0.4, 0.5), std::domain_error);
}

TEST_CASE("theta nonnegative, derivative identity, monotone family") {
  for (auto [p, beta] : {std::pair{3, 0.5}, {4, 1.0}, {10, 1.5}, {20, 1.15}}) {
    ModelSpec m(p, beta);
    double prev_xi = -1.0, prev_xip = -1.0, prev_xipp = -1.0;
    for (int i = 0; i <= 100; ++i) {
      double q = i / 100.0;
      CHECK(theta(m, q) >= 0.0);
      if (q > 0.0) CHECK(theta(m, q) > 0.0);

      // d theta / dq = q xi''(q) at finite-difference tolerance.
      if (i > 0 && i < 100) {
        double h = 1e-6;
        double fd = (theta(m, q + h) - theta(m, q - h)) / (2.0 * h);
        CHECK(std::abs(fd - q * xi_pp(m, q)) < 1e-8 * std::max(1.0, q * xi_pp(m, q)));
      }

      CHECK(xi(m, q) >= prev_xi);
      CHECK(xi_prime(m, q) >= prev_xip);
      CHECK(xi_pp(m, q) >= prev_xipp);
      prev_xi = xi(m, q);
      prev_xip = xi_prime(m, q);
      prev_xipp = xi_pp(m, q);
    }
  }
}

TEST_CASE("high-degree powers stay accurate near 1") {
  ModelSpec m(20, 1.15);
  // 1e-7-scale finite differences of xi at q = 1 - 6e-7 must match xi' to
  // 1e-5 relative; this is where naive powers drift.
  for (double x : {0.9999992, 0.9999994, 0.9999997, 0.9999999}) {
    double h = 1e-7;
    double fd = (xi(m, x + h > 1.0 ? 1.0 : x + h) - xi(m, x - h)) /
                ((x + h > 1.0 ? 1.0 : x + h) - (x - h));
    CHECK(std::abs(fd - xi_prime(m, x)) / xi_prime(m, x) < 1e-5);
  }
}
