#include "vdist/optimize.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "vdist/errors.hpp"

namespace vdist {

namespace {

constexpr double kInvPhi = 0.6180339887498949;  // (sqrt(5) - 1) / 2

struct Probe {
  double x = 0.0;
  double fx = 0.0;
  int evals = 0;
};

// Golden-section search on [a, b]; linear convergence, no smoothness needed.
// Past tol_x the search keeps going while the best value still improves (up to
// a machine-precision floor), so kinked minima — where the bracket stays
// perfectly conditioned — get resolved far below the nominal tolerance.
Probe golden_section(const std::function<double(double)>& f, double a, double b, double tol_x) {
  const double tol_floor = 4e-16 * (1.0 + std::fabs(a) + std::fabs(b));
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  int evals = 2;
  for (int it = 0; it < 220 && (b - a) > tol_floor; ++it) {
    if ((b - a) <= tol_x && std::fabs(fc - fd) <= 4e-16 * (std::fabs(fc) + std::fabs(fd))) break;
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
    ++evals;
  }
  Probe best{0.5 * (a + b), f(0.5 * (a + b)), evals + 1};
  if (fc < best.fx) {
    best.x = c;
    best.fx = fc;
  }
  if (fd < best.fx) {
    best.x = d;
    best.fx = fd;
  }
  return best;
}

std::vector<double> make_grid(double lo, double hi, int n, bool log_spaced) {
  std::vector<double> xs(static_cast<std::size_t>(n));
  if (log_spaced) {
    const double ratio = hi / lo;
    for (int i = 0; i < n; ++i)
      xs[static_cast<std::size_t>(i)] = lo * std::pow(ratio, static_cast<double>(i) / (n - 1));
  } else {
    for (int i = 0; i < n; ++i)
      xs[static_cast<std::size_t>(i)] = lo + (hi - lo) * static_cast<double>(i) / (n - 1);
  }
  xs.front() = lo;
  xs.back() = hi;
  return xs;
}

double clamp(double x, double lo, double hi) { return std::min(hi, std::max(lo, x)); }

// Bisection on the sign of a central-difference derivative. Smooth minima are
// limited to ~sqrt(eps) by value comparisons alone; the derivative flips sign
// cleanly at the minimum, so its root can be pinned almost to machine
// precision. Returns an improved probe or the input when no sign change
// brackets the minimum (boundary or kinked cases — the caller keeps whichever
// point evaluates no worse).
Probe derivative_bisect(const std::function<double(double)>& f, double lo, double hi,
                        const Probe& seed) {
  const double h = 1e-6 * (1.0 + std::fabs(seed.x));
  double a = std::max(lo + h, seed.x - 64.0 * h);
  double b = std::min(hi - h, seed.x + 64.0 * h);
  if (!(a < b)) return seed;
  auto slope_sign = [&](double x) { return f(x + h) - f(x - h); };
  double sa = slope_sign(a);
  double sb = slope_sign(b);
  int evals = 4;
  if (!(sa < 0.0 && sb > 0.0)) return {seed.x, seed.fx, evals};
  for (int it = 0; it < 60 && (b - a) > 4e-13 * (1.0 + std::fabs(a)); ++it) {
    const double m = 0.5 * (a + b);
    const double sm = slope_sign(m);
    evals += 2;
    if (sm > 0.0)
      b = m;
    else
      a = m;
  }
  const double x = 0.5 * (a + b);
  const double fx = f(x);
  ++evals;
  if (fx <= seed.fx + 4e-16 * std::fabs(seed.fx)) return {x, fx, evals};
  return {seed.x, seed.fx, evals};
}

}  // namespace

ScalarMinResult minimize_scalar(const std::function<double(double)>& f, double lo, double hi,
                                double tol, int grid_points) {
  if (!(std::isfinite(lo) && std::isfinite(hi) && lo < hi))
    throw DomainError("minimize: bounds must be finite with lo < hi");
  if (!(tol > 0.0)) throw DomainError("minimize: tolerance must be positive");
  if (grid_points < 3) grid_points = 3;

  const bool log_spaced = lo > 0.0 && hi / lo > 100.0;
  const auto xs = make_grid(lo, hi, grid_points, log_spaced);
  std::size_t best = 0;
  double fbest = f(xs[0]);
  int evals = 1;
  for (std::size_t i = 1; i < xs.size(); ++i) {
    const double fx = f(xs[i]);
    ++evals;
    if (fx < fbest) {
      fbest = fx;
      best = i;
    }
  }

  const double a = xs[best > 0 ? best - 1 : 0];
  const double b = xs[std::min(xs.size() - 1, best + 1)];
  const double tol_x = tol * (1.0 + std::fabs(a) + std::fabs(b));
  Probe refine = golden_section(f, a, b, tol_x);
  evals += refine.evals;

  ScalarMinResult out;
  if (refine.fx <= fbest) {
    out.x = refine.x;
    out.fx = refine.fx;
  } else {
    out.x = xs[best];
    out.fx = fbest;
  }
  out.evals = evals;
  const double edge = 2.0 * tol_x + 4.0 * (std::fabs(out.x) + 1.0) * 1e-16;
  out.at_boundary = (out.x - lo <= edge) || (hi - out.x <= edge);
  return out;
}

namespace {

// Nelder-Mead on a quadratic-penalty extension of f outside the box.
Probe run_simplex2(const std::function<double(const std::vector<double>&)>& f,
                   const std::vector<Interval>& bounds, std::vector<double> x0, double tol,
                   std::vector<double>& xbest) {
  const double span0 = bounds[0].hi - bounds[0].lo;
  const double span1 = bounds[1].hi - bounds[1].lo;
  auto fpen = [&](const std::vector<double>& x) {
    std::vector<double> c{clamp(x[0], bounds[0].lo, bounds[0].hi),
                          clamp(x[1], bounds[1].lo, bounds[1].hi)};
    const double e0 = (x[0] - c[0]) / span0;
    const double e1 = (x[1] - c[1]) / span1;
    const double v = f(c);
    return v + (e0 * e0 + e1 * e1) * 1e4 * (1.0 + std::fabs(v));
  };

  x0[0] = clamp(x0[0], bounds[0].lo, bounds[0].hi);
  x0[1] = clamp(x0[1], bounds[1].lo, bounds[1].hi);
  std::vector<std::vector<double>> v(3, x0);
  const double h0 = 0.05 * span0, h1 = 0.05 * span1;
  v[1][0] += (v[1][0] + h0 <= bounds[0].hi) ? h0 : -h0;
  v[2][1] += (v[2][1] + h1 <= bounds[1].hi) ? h1 : -h1;

  std::vector<double> fv(3);
  int evals = 0;
  for (int i = 0; i < 3; ++i) {
    fv[static_cast<std::size_t>(i)] = fpen(v[static_cast<std::size_t>(i)]);
    ++evals;
  }

  for (int it = 0; it < 400; ++it) {
    std::array<std::size_t, 3> ord{0, 1, 2};
    std::stable_sort(ord.begin(), ord.end(),
                     [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
    const std::size_t lo_i = ord[0], mid_i = ord[1], hi_i = ord[2];

    const double fspread = std::fabs(fv[hi_i] - fv[lo_i]);
    const double xspread =
        std::max(std::fabs(v[hi_i][0] - v[lo_i][0]) / span0,
                 std::fabs(v[hi_i][1] - v[lo_i][1]) / span1);
    if (fspread <= tol * (1.0 + std::fabs(fv[lo_i])) && xspread <= tol) break;

    std::vector<double> cen{0.5 * (v[lo_i][0] + v[mid_i][0]), 0.5 * (v[lo_i][1] + v[mid_i][1])};
    auto blend = [&](double coef) {
      return std::vector<double>{cen[0] + coef * (cen[0] - v[hi_i][0]),
                                 cen[1] + coef * (cen[1] - v[hi_i][1])};
    };

    auto xr = blend(1.0);
    const double fr = fpen(xr);
    ++evals;
    if (fr < fv[lo_i]) {
      auto xe = blend(2.0);
      const double fe = fpen(xe);
      ++evals;
      if (fe < fr) {
        v[hi_i] = xe;
        fv[hi_i] = fe;
      } else {
        v[hi_i] = xr;
        fv[hi_i] = fr;
      }
    } else if (fr < fv[mid_i]) {
      v[hi_i] = xr;
      fv[hi_i] = fr;
    } else {
      auto xc = blend(fr < fv[hi_i] ? 0.5 : -0.5);
      const double fc = fpen(xc);
      ++evals;
      if (fc < std::min(fr, fv[hi_i])) {
        v[hi_i] = xc;
        fv[hi_i] = fc;
      } else {
        // shrink toward the best vertex
        for (std::size_t i : {mid_i, hi_i}) {
          v[i][0] = v[lo_i][0] + 0.5 * (v[i][0] - v[lo_i][0]);
          v[i][1] = v[lo_i][1] + 0.5 * (v[i][1] - v[lo_i][1]);
          fv[i] = fpen(v[i]);
          ++evals;
        }
      }
    }
  }

  std::size_t win = 0;
  for (std::size_t i = 1; i < 3; ++i)
    if (fv[i] < fv[win]) win = i;
  xbest = {clamp(v[win][0], bounds[0].lo, bounds[0].hi),
           clamp(v[win][1], bounds[1].lo, bounds[1].hi)};
  const double fb = f(xbest);
  ++evals;
  return {0.0, fb, evals};
}

}  // namespace

BoxMinResult minimize_box(const std::function<double(const std::vector<double>&)>& f,
                          const std::vector<Interval>& bounds,
                          const std::vector<std::vector<double>>& extra_starts, double tol) {
  if (bounds.empty() || bounds.size() > 2)
    throw DomainError("minimize: only 1- or 2-dimensional boxes are supported");
  for (const auto& b : bounds)
    if (!(std::isfinite(b.lo) && std::isfinite(b.hi) && b.lo < b.hi))
      throw DomainError("minimize: bounds must be finite with lo < hi");
  if (!(tol > 0.0)) throw DomainError("minimize: tolerance must be positive");

  if (bounds.size() == 1) {
    auto sub = minimize_scalar([&](double x) { return f({x}); }, bounds[0].lo, bounds[0].hi, tol);
    int evals = sub.evals;
    // honor caller-provided starts with a local refinement around each
    for (const auto& s : extra_starts) {
      if (s.size() != 1) continue;
      const double x0 = clamp(s[0], bounds[0].lo, bounds[0].hi);
      const double cell = (bounds[0].hi - bounds[0].lo) / 64.0;
      const double a = std::max(bounds[0].lo, x0 - cell);
      const double b = std::min(bounds[0].hi, x0 + cell);
      if (a >= b) continue;
      auto p = golden_section([&](double x) { return f({x}); }, a, b,
                              tol * (1.0 + std::fabs(a) + std::fabs(b)));
      evals += p.evals;
      if (p.fx < sub.fx) {
        sub.fx = p.fx;
        sub.x = p.x;
      }
    }
    BoxMinResult out;
    out.x = {sub.x};
    out.fx = sub.fx;
    out.evals = evals;
    const double edge = 2.0 * tol * (1.0 + std::fabs(sub.x)) + 4e-16 * (1.0 + std::fabs(sub.x));
    out.at_boundary = (sub.x - bounds[0].lo <= edge) || (bounds[0].hi - sub.x <= edge);
    return out;
  }

  // --- 2-dimensional search ---
  constexpr int kGrid = 33;
  std::array<std::vector<double>, 2> axes;
  for (std::size_t d = 0; d < 2; ++d) {
    const bool log_spaced = bounds[d].lo > 0.0 && bounds[d].hi / bounds[d].lo > 100.0;
    axes[d] = make_grid(bounds[d].lo, bounds[d].hi, kGrid, log_spaced);
  }

  int evals = 0;
  std::vector<std::pair<double, std::vector<double>>> ranked;
  ranked.reserve(kGrid * kGrid);
  for (double x0 : axes[0])
    for (double x1 : axes[1]) {
      const double fx = f({x0, x1});
      ++evals;
      ranked.push_back({fx, {x0, x1}});
    }
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });

  std::vector<std::vector<double>> starts;
  for (std::size_t i = 0; i < ranked.size() && starts.size() < 3; ++i) starts.push_back(ranked[i].second);
  for (const auto& s : extra_starts)
    if (s.size() == 2 && std::isfinite(s[0]) && std::isfinite(s[1])) starts.push_back(s);

  std::vector<double> xbest = ranked.front().second;
  double fbest = ranked.front().first;
  for (const auto& s : starts) {
    std::vector<double> xout;
    auto p = run_simplex2(f, bounds, s, tol, xout);
    evals += p.evals;
    if (p.fx < fbest) {
      fbest = p.fx;
      xbest = xout;
    }
  }

  // cyclic per-coordinate refinement: a full scan+golden pass per axis, whose
  // tolerance scales with the final bracket rather than the whole axis
  for (int cycle = 0; cycle < 8; ++cycle) {
    const double before = fbest;
    for (std::size_t d = 0; d < 2; ++d) {
      auto line = [&](double x) {
        auto xx = xbest;
        xx[d] = x;
        return f(xx);
      };
      auto p = minimize_scalar(line, bounds[d].lo, bounds[d].hi, tol, kGrid);
      evals += p.evals;
      if (p.fx < fbest) {
        fbest = p.fx;
        xbest[d] = p.x;
      }
    }
    if (before - fbest <= tol * (1.0 + std::fabs(fbest))) break;
  }

  BoxMinResult out;
  out.x = xbest;
  out.fx = fbest;
  out.evals = evals;
  out.at_boundary = false;
  for (std::size_t d = 0; d < 2; ++d) {
    const double edge = 2.0 * tol * (1.0 + std::fabs(bounds[d].lo) + std::fabs(bounds[d].hi)) +
                        4e-16 * (1.0 + std::fabs(xbest[d]));
    if (xbest[d] - bounds[d].lo <= edge || bounds[d].hi - xbest[d] <= edge) out.at_boundary = true;
  }
  return out;
}

}  // namespace vdist
