// SPDX-License-Identifier: MIT
#pragma once

#include <functional>

namespace emte {

// Finite-difference policy shared by every numeric-derivative fallback.
// Steps are relative to characteristic scales so callers can tune them per
// problem; defaults are chosen for fields of order one over domains of
// order one.
struct FdConfig {
  double h_x = 1e-5;       // spatial step (times char_length)
  double h_t = 1e-5;       // time step (times char_time)
  int order = 4;           // 2 or 4 (central stencils)
  bool richardson = false; // one extra halving + extrapolation
  double char_length = 1.0;
  double char_time = 1.0;

  double step_x() const { return h_x * char_length; }
  double step_t() const { return h_t * char_time; }
};

// d/ds f(s) at s = 0 for a 1D restriction; f is evaluated at +-h (+-2h).
double fd_derivative(const std::function<double(double)>& f, double h, int order,
                     bool richardson);

// Second derivative d^2/ds^2 f at s = 0 (central, order 2 or 4).
double fd_second_derivative(const std::function<double(double)>& f, double h, int order,
                            bool richardson);

} // namespace emte
