#pragma once

#include <cmath>
#include <vector>

namespace vdist {

// Plain numeric interval. Regions treat it as half-open [lo, hi); optimizer
// bounds treat it as closed.
struct Interval {
  double lo;
  double hi;
};

// Union of half-open intervals and an explicit value set, e.g. the observed
// part of a censored sample or the retained values of a discrete truncation.
struct Region {
  std::vector<Interval> intervals;
  std::vector<double> values;

  bool contains(double x) const {
    for (const auto& iv : intervals)
      if (x >= iv.lo && x < iv.hi) return true;
    for (double v : values)
      if (x == v) return true;
    return false;
  }

  bool empty() const { return intervals.empty() && values.empty(); }

  static Region all() { return Region{{Interval{-INFINITY, INFINITY}}, {}}; }
};

}  // namespace vdist
