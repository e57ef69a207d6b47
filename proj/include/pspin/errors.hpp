#pragma once

#include <stdexcept>
#include <string>

namespace pspin {

// Integrand produced a non-finite value at a quadrature node.
class evaluation_error : public std::runtime_error {
 public:
  explicit evaluation_error(const std::string& what) : std::runtime_error(what) {}
};

// Measure has more atoms than the closed-form recursions support.
class capacity_error : public std::invalid_argument {
 public:
  explicit capacity_error(const std::string& what) : std::invalid_argument(what) {}
};

// p = 2 (SK): the RS/1RSB boundary system has no solution.
class no_transition_error : public std::runtime_error {
 public:
  explicit no_transition_error(const std::string& what) : std::runtime_error(what) {}
};

// Bisection could not bracket a sign change.
class bracket_error : public std::runtime_error {
 public:
  explicit bracket_error(const std::string& what) : std::runtime_error(what) {}
};

// 1RSB solve requested at or below the first critical temperature.
class below_transition_error : public std::runtime_error {
 public:
  explicit below_transition_error(const std::string& what) : std::runtime_error(what) {}
};

// Newton iteration for the 1RSB system failed to converge inside (0,1)^2.
class no_window_error : public std::runtime_error {
 public:
  explicit no_window_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace pspin
