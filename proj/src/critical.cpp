#include "pspin/critical.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "pspin/errors.hpp"
#include "pspin/rs_functions.hpp"

namespace pspin {

namespace {

constexpr double kRootBisectTol = 1e-12;
constexpr double kTangencyTol = 1e-10;
constexpr double kBetaTol = 1e-8;

std::vector<double> scan_grid(int p) {
  std::vector<double> grid;
  grid.reserve(4001);
  if (p >= 10) {
    // Half uniform on (0, 0.9], half log-refined toward 1: the roots approach
    // 1 - O(1e-7) already at p = 20.
    for (int i = 1; i <= 2001; ++i) grid.push_back(0.9 * i / 2001.0);
    for (int i = 0; i < 2000; ++i) {
      double y = 1.0 + 12.0 * i / 1999.0;  // 10^-1 .. 10^-13
      grid.push_back(1.0 - std::pow(10.0, -y));
    }
    std::sort(grid.begin(), grid.end());
  } else {
    for (int i = 1; i <= 4001; ++i) grid.push_back(static_cast<double>(i) / 4002.0);
  }
  return grid;
}

double bisect(const ModelSpec& model, const QuadratureRule& rule, double a, double b,
              double fa, double fb) {
  for (int it = 0; it < 200 && b - a > kRootBisectTol; ++it) {
    double c = 0.5 * (a + b);
    double fc = D(model, c, rule);
    if (fc == 0.0) return c;
    if ((fa < 0.0) != (fc < 0.0)) {
      b = c;
      fb = fc;
    } else {
      a = c;
      fa = fc;
    }
  }
  (void)fb;
  return 0.5 * (a + b);
}

struct ScanResult {
  std::vector<double> roots;
  bool positive_at_end;  // D > 0 at the last grid point (upper root beyond reach)
  double grid_end;
};

ScanResult scan_d(const ModelSpec& model, const QuadratureRule& rule) {
  std::vector<double> grid = scan_grid(model.p);
  std::vector<double> vals(grid.size());
  for (size_t i = 0; i < grid.size(); ++i) vals[i] = D(model, grid[i], rule);

  ScanResult res;
  res.grid_end = grid.back();
  res.positive_at_end = vals.back() > 0.0;
  for (size_t i = 0; i + 1 < grid.size(); ++i) {
    if (vals[i] == 0.0) {
      res.roots.push_back(grid[i]);
      continue;
    }
    if ((vals[i] < 0.0) != (vals[i + 1] < 0.0))
      res.roots.push_back(bisect(model, rule, grid[i], grid[i + 1], vals[i], vals[i + 1]));
  }

  if (res.roots.empty()) {
    // No sign change on the grid. The D > 0 window can be narrower than the
    // grid spacing near the threshold; polish the grid maximum and look again.
    size_t im = std::distance(vals.begin(), std::max_element(vals.begin(), vals.end()));
    double a = grid[im > 0 ? im - 1 : im];
    double b = grid[im + 1 < grid.size() ? im + 1 : im];
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = D(model, c, rule), fd = D(model, d, rule);
    for (int it = 0; it < 200 && b - a > 1e-14; ++it) {
      if (fc > fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - gr * (b - a);
        fc = D(model, c, rule);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + gr * (b - a);
        fd = D(model, d, rule);
      }
    }
    double um = 0.5 * (a + b);
    double dm = D(model, um, rule);
    double lo = grid[im > 0 ? im - 1 : im];
    double hi = grid[im + 1 < grid.size() ? im + 1 : im];
    if (dm > 0.0) {
      res.roots.push_back(bisect(model, rule, lo, um, D(model, lo, rule), dm));
      res.roots.push_back(bisect(model, rule, um, hi, dm, D(model, hi, rule)));
    } else if (std::abs(dm) < kTangencyTol) {
      res.roots.push_back(um);  // double root at the tangency
    }
  }
  std::sort(res.roots.begin(), res.roots.end());
  return res;
}

}  // namespace

std::vector<double> d_roots(const ModelSpec& model, const QuadratureRule& rule) {
  if (!(model.beta > 0.0)) throw std::domain_error("d_roots: requires beta > 0");
  return scan_d(model, rule).roots;
}

CriterionReport check_criterion(int p, double beta_low, double beta_high,
                                const ProbePoints& probes, const QuadratureRule& rule) {
  if (!(0.0 < beta_low && beta_low < beta_high))
    throw std::invalid_argument("check_criterion: need 0 < beta_low < beta_high");
  if (!(0.0 < probes.q01 && probes.q01 < probes.q02 && probes.q02 < probes.q11 &&
        probes.q11 < probes.q12 && probes.q12 < 1.0))
    throw std::invalid_argument("check_criterion: probes must satisfy 0 < q01 < q02 < q11 < q12 < 1");
  if (!(0.0 < probes.q2 && probes.q2 < 1.0))
    throw std::invalid_argument("check_criterion: q2 must lie in (0,1)");

  ModelSpec low(p, beta_low);
  ModelSpec high(p, beta_high);
  CriterionReport r;
  r.p = p;
  r.beta_low = beta_low;
  r.beta_high = beta_high;
  r.d_values = {D(low, probes.q01, rule), D(low, probes.q02, rule),
                D(low, probes.q11, rule), D(low, probes.q12, rule)};
  r.cond_1a = r.d_values[0] > r.d_values[1] && r.d_values[1] > 0.0 &&
              0.0 > r.d_values[2] && r.d_values[2] > r.d_values[3];
  r.c1_minus_c2 = C1(low, probes.q11, rule) - C2(low, probes.q02);
  r.cond_1b = r.c1_minus_c2 < 0.0;
  r.c_at_q2 = C(high, probes.q2, rule);
  r.cond_2 = r.c_at_q2 > 0.0;
  r.verdict = r.cond_1a && r.cond_1b && r.cond_2;
  return r;
}

namespace {

// Largest margin by which RS fails at this beta: C at the larger D-root, with
// C at the grid end standing in when the upper root sits beyond double
// resolution (C increases through the D > 0 stretch, so this is a lower bound).
double rs_violation(const ModelSpec& model, const QuadratureRule& rule) {
  ScanResult scan = scan_d(model, rule);
  double v = -1.0;
  for (double r : scan.roots) v = std::max(v, C(model, r, rule));
  if (scan.positive_at_end) v = std::max(v, C(model, scan.grid_end, rule));
  return v;
}

}  // namespace

BoundarySolution solve_boundary(int p, const QuadratureRule& rule) {
  if (p == 2)
    throw no_transition_error(
        "solve_boundary: p = 2 (SK) has no RS/1RSB transition; the boundary system has no solution");
  if (p < 3) throw std::invalid_argument("solve_boundary: p must be >= 3");

  auto h = [&](double beta) { return rs_violation(ModelSpec(p, beta), rule); };

  double lo = 0.5, hi = 2.0;
  double h_lo = h(lo);
  if (h_lo > 0.0) throw bracket_error("solve_boundary: RS already violated at beta = 0.5");
  double h_hi = h(hi);
  while (h_hi < 0.0) {
    hi *= 2.0;
    if (hi > 10.0)
      throw bracket_error("solve_boundary: no sign change for beta in (0, 10]");
    h_hi = h(hi);
  }

  double mid = 0.5 * (lo + hi);
  double v = h(mid);
  for (int it = 0; it < 200; ++it) {
    if (v > 0.0)
      hi = mid;
    else
      lo = mid;
    if (hi - lo <= kBetaTol && std::abs(v) <= kBetaTol) break;
    mid = 0.5 * (lo + hi);
    v = h(mid);
  }

  BoundarySolution sol;
  sol.p = p;
  sol.beta1 = 0.5 * (lo + hi);
  sol.bracket_width = hi - lo;
  ModelSpec model(p, sol.beta1);
  std::vector<double> roots = d_roots(model, rule);
  if (roots.empty()) throw bracket_error("solve_boundary: lost the D-root at the solution");
  sol.q1 = roots.back();
  sol.residual_C = C(model, sol.q1, rule);
  sol.residual_D = D(model, sol.q1, rule);
  return sol;
}

bool classify_rs(const ModelSpec& model, const QuadratureRule& rule) {
  if (!(model.beta > 0.0)) throw std::domain_error("classify_rs: requires beta > 0");
  for (double r : d_roots(model, rule))
    if (C(model, r, rule) > 1e-9) return false;
  return true;
}

}  // namespace pspin
