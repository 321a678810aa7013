#pragma once

#include <functional>
#include <vector>

#include "vdist/interval.hpp"

namespace vdist {

struct ScalarMinResult {
  double x = 0.0;
  double fx = 0.0;
  int evals = 0;
  bool at_boundary = false;  // minimum pinned to an end of [lo, hi]
};

// Derivative-free bounded scalar minimization: coarse scan (log-spaced when
// the interval is positive and spans two+ decades) followed by golden-section
// refinement of the bracketing triple. Handles piecewise-smooth objectives
// such as sums of absolute values.
ScalarMinResult minimize_scalar(const std::function<double(double)>& f, double lo, double hi,
                                double tol, int grid_points = 65);

struct BoxMinResult {
  std::vector<double> x;
  double fx = 0.0;
  int evals = 0;
  bool at_boundary = false;
};

// Derivative-free minimization over an axis-aligned box (dim 1 or 2):
// coarse grid, Nelder-Mead restarts from the best grid cells and caller
// starts, then cyclic per-coordinate golden refinement (which rescues the
// simplex on V-shaped valleys). Deterministic for identical inputs.
BoxMinResult minimize_box(const std::function<double(const std::vector<double>&)>& f,
                          const std::vector<Interval>& bounds,
                          const std::vector<std::vector<double>>& extra_starts, double tol);

}  // namespace vdist
