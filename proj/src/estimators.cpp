#include "vdist/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "vdist/errors.hpp"
#include "vdist/metric.hpp"
#include "vdist/optimize.hpp"

namespace vdist {

std::string method_name(Method m) {
  switch (m) {
    case Method::ClosedForm: return "closed-form";
    case Method::MinDv: return "min-dv";
    case Method::NewMLE: return "new-mle";
    case Method::NewMoments: return "new-moments";
    case Method::ClassicalMLE: return "classical-mle";
    case Method::ClassicalTruncatedMLE: return "classical-truncated-mle";
    case Method::WeightedPairwise: return "weighted-pairwise";
  }
  return "?";
}

std::string status_name(FitStatus s) {
  switch (s) {
    case FitStatus::Converged: return "converged";
    case FitStatus::ToleranceSet: return "tolerance-set";
    case FitStatus::NoSolution: return "no-solution";
    case FitStatus::Degenerate: return "degenerate";
  }
  return "?";
}

namespace {

constexpr double kPenalty = 1e100;

void check_counts(double n1, double n2) {
  if (!(n1 > 0.0) || !(n2 > 0.0) || !std::isfinite(n1) || !std::isfinite(n2))
    throw ZeroDensity("two-point: counts must be strictly positive");
}

double dv_of(double x, double y, double n1, double n2, const ParametricModel& model) {
  return dv_model(FrequencyTable({x, y}, {n1, n2}), model);
}

EstimationResult with_dv(EstimationResult r, double dv) {
  r.dv_at_optimum = dv;
  r.exact = std::isfinite(dv) && dv <= kExactTolerance;
  return r;
}

}  // namespace

EstimationResult exp_rate_two_point(double x, double y, double n1, double n2) {
  check_counts(n1, n2);
  if (!(std::isfinite(x) && std::isfinite(y))) throw DomainError("two-point: non-finite support");
  if (x == y) throw DegenerateSupport("two-point: coincident observations");
  const double rate = (std::log(n1) - std::log(n2)) / (y - x);
  EstimationResult r;
  r.method = Method::ClosedForm;
  if (!(rate > 0.0)) {
    r.status = FitStatus::NoSolution;
    r.diagnostic = "ratio orientation gives a non-positive rate (data anomaly)";
    return r;
  }
  r.params = {rate};
  return with_dv(std::move(r), dv_of(x, y, n1, n2, ParametricModel::exponential(rate)));
}

EstimationResult exp_rate_classical_two_point(double x, double y, double n1, double n2) {
  check_counts(n1, n2);
  if (!(std::isfinite(x) && std::isfinite(y))) throw DomainError("two-point: non-finite support");
  const double denom = n1 * x + n2 * y;
  if (!(denom > 0.0)) throw DegenerateSupport("classical two-point: non-positive mean");
  const double rate = (n1 + n2) / denom;
  EstimationResult r;
  r.method = Method::ClassicalMLE;
  r.params = {rate};
  if (x == y) {
    r.diagnostic = "coincident observations; dv undefined";
    return r;
  }
  return with_dv(std::move(r), dv_of(x, y, n1, n2, ParametricModel::exponential(rate)));
}

EstimationResult normal_mean_two_point(double x, double y, double n1, double n2, double sigma) {
  check_counts(n1, n2);
  if (!(std::isfinite(x) && std::isfinite(y))) throw DomainError("two-point: non-finite support");
  if (x == y) throw DegenerateSupport("two-point: coincident observations");
  if (!(sigma > 0.0) || !std::isfinite(sigma))
    throw ConstraintViolation("two-point: sigma must be > 0");
  const double s2 = sigma * sigma;
  const double m =
      (-std::log(n1 / n2) - x * x / (2.0 * s2) + y * y / (2.0 * s2)) / ((y - x) / s2);
  EstimationResult r;
  r.method = Method::ClosedForm;
  r.params = {m};
  return with_dv(std::move(r), dv_of(x, y, n1, n2, ParametricModel::normal(m, sigma)));
}

EstimationResult normal_sigma_two_point(double x, double y, double n1, double n2, double m) {
  check_counts(n1, n2);
  if (!(std::isfinite(x) && std::isfinite(y))) throw DomainError("two-point: non-finite support");
  if (x == y) throw DegenerateSupport("two-point: coincident observations");
  if (!std::isfinite(m)) throw ConstraintViolation("two-point: mean must be finite");

  EstimationResult r;
  r.method = Method::ClosedForm;
  if (n1 == n2) {
    // ratio 1: either every sigma works (support symmetric about m) or none does
    const double sym = x + y - 2.0 * m;
    if (std::fabs(sym) <= 1e-12 * (std::fabs(x) + std::fabs(y) + std::fabs(m) + 1.0)) {
      r.status = FitStatus::Degenerate;
      r.params = {1.0};
      r.diagnostic = "support symmetric about the mean: every sigma solves the equation";
      return with_dv(std::move(r), dv_of(x, y, n1, n2, ParametricModel::normal(m, 1.0)));
    }
    r.status = FitStatus::NoSolution;
    r.diagnostic = "equal counts on asymmetric support: no sigma solves the equation";
    return r;
  }

  const double log_ratio = std::log(n1 / n2);
  const double s2 = (2.0 * m * x - 2.0 * m * y - x * x + y * y) / (2.0 * log_ratio);
  if (!(s2 > 0.0)) {
    r.status = FitStatus::NoSolution;
    r.diagnostic = "negative radicand: ratio orientation inconsistent with a normal at this mean";
    return r;
  }
  const double sigma = std::sqrt(s2);
  r.params = {sigma};
  return with_dv(std::move(r), dv_of(x, y, n1, n2, ParametricModel::normal(m, sigma)));
}

EstimationResult weighted_pairwise(const FrequencyTable& table, const TwoPointSolver& solver) {
  if (table.size() < 3)
    throw DomainError("weighted-pairwise: needs at least 3 support points");
  const auto& y = table.support();
  const auto& n = table.counts();
  std::vector<double> acc;
  double wsum = 0.0;
  int skipped = 0;
  int used = 0;
  for (std::size_t i = 0; i < y.size(); ++i)
    for (std::size_t j = i + 1; j < y.size(); ++j) {
      EstimationResult sub;
      try {
        sub = solver(y[i], y[j], n[i], n[j]);
      } catch (const Error&) {
        ++skipped;
        continue;
      }
      if (sub.status != FitStatus::Converged || sub.params.empty()) {
        ++skipped;
        continue;
      }
      const double w = n[i] + n[j];
      if (acc.empty()) acc.assign(sub.params.size(), 0.0);
      for (std::size_t p = 0; p < sub.params.size(); ++p) acc[p] += w * sub.params[p];
      wsum += w;
      ++used;
    }

  EstimationResult r;
  r.method = Method::WeightedPairwise;
  r.skipped_pairs = skipped;
  r.iterations = used;
  if (used == 0) {
    r.status = FitStatus::NoSolution;
    r.diagnostic = "every pair was inadmissible for the two-point closed form";
    return r;
  }
  for (double& v : acc) v /= wsum;
  r.params = std::move(acc);
  return r;
}

// ---- optimizer-based estimators ----

namespace {

enum class ParamKind { Positive, Mean, Probability, Integer };

ParamKind param_kind(Family f, std::size_t idx) {
  switch (f) {
    case Family::Exponential: return ParamKind::Positive;
    case Family::Normal: return idx == 0 ? ParamKind::Mean : ParamKind::Positive;
    case Family::Binomial: return idx == 0 ? ParamKind::Integer : ParamKind::Probability;
    case Family::Poisson: return ParamKind::Positive;
    case Family::Weibull: return ParamKind::Positive;
    case Family::Gamma: return ParamKind::Positive;
  }
  return ParamKind::Positive;
}

struct Packed {
  Family family;
  std::vector<std::optional<double>> fixed;  // arity-sized
  std::vector<std::size_t> free_idx;
  std::vector<Interval> bounds;  // per free parameter
  std::vector<double> init;      // per free parameter
  double tol;
};

Interval kind_bounds(ParamKind kind, const std::vector<double>& support) {
  switch (kind) {
    case ParamKind::Positive: return {1e-6, 1e6};
    case ParamKind::Probability: return {1e-6, 1.0 - 1e-6};
    case ParamKind::Mean: {
      const double mn = support.front(), mx = support.back();
      const double range = mx - mn;
      return {mn - 10.0 * range, mx + 10.0 * range};
    }
    case ParamKind::Integer: break;
  }
  throw DomainError("no search bounds for an integer parameter");
}

void validate_bounds(ParamKind kind, const Interval& b) {
  if (!(std::isfinite(b.lo) && std::isfinite(b.hi) && b.lo < b.hi))
    throw DomainError("fit: infeasible bounds (need finite lo < hi)");
  switch (kind) {
    case ParamKind::Positive:
      if (b.lo <= 0.0) throw DomainError("fit: positive parameter needs bounds above 0");
      break;
    case ParamKind::Probability:
      if (b.lo <= 0.0 || b.hi >= 1.0)
        throw DomainError("fit: probability bounds must lie inside (0,1)");
      break;
    case ParamKind::Mean:
      break;
    case ParamKind::Integer:
      throw DomainError("fit: integer parameter cannot be searched");
  }
}

double weighted_mean(const FrequencyTable& t) {
  double m = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i)
    m += t.relative_frequency(i) * t.support()[i];
  return m;
}

double weighted_var(const FrequencyTable& t, double mean) {
  double v = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double d = t.support()[i] - mean;
    v += t.relative_frequency(i) * d * d;
  }
  return v;
}

std::vector<double> heuristic_full_init(const FrequencyTable& t, const Packed& p) {
  const double mu = weighted_mean(t);
  const double var = weighted_var(t, mu);
  const double range = t.support().back() - t.support().front();
  switch (p.family) {
    case Family::Exponential: return {mu > 0.0 ? 1.0 / mu : 1.0};
    case Family::Normal: return {mu, std::max(std::sqrt(var), 1e-3 * range)};
    case Family::Binomial: {
      const double n = p.fixed[0] ? *p.fixed[0] : 1.0;
      return {n, std::min(0.99, std::max(0.01, mu / n))};
    }
    case Family::Poisson: return {std::max(mu, 1e-2)};
    case Family::Weibull: return {1.0, mu > 0.0 ? mu : 1.0};
    case Family::Gamma: {
      if (var > 0.0 && mu > 0.0) return {mu * mu / var, mu / var};
      return {1.0, 1.0};
    }
  }
  return {};
}

Packed pack(const FrequencyTable& table, const FitSpec& spec) {
  const std::size_t arity = param_names(spec.family).size();
  Packed p;
  p.family = spec.family;
  p.fixed = spec.fixed;
  if (p.fixed.empty()) p.fixed.assign(arity, std::nullopt);
  if (p.fixed.size() != arity)
    throw ConstraintViolation("fit: fixed-parameter list length does not match the family");
  if (spec.family == Family::Binomial && !p.fixed[0])
    throw DomainError("fit: binomial n must be fixed");
  for (std::size_t i = 0; i < arity; ++i)
    if (!p.fixed[i]) p.free_idx.push_back(i);
  if (p.free_idx.empty() || p.free_idx.size() > 2)
    throw DomainError("fit: between 1 and 2 free parameters are supported");
  if (!(spec.tol > 0.0)) throw DomainError("fit: tolerance must be positive");
  p.tol = spec.tol;

  if (!spec.bounds.empty() && spec.bounds.size() != p.free_idx.size())
    throw DomainError("fit: bounds list length does not match the free parameters");
  p.bounds.reserve(p.free_idx.size());
  for (std::size_t k = 0; k < p.free_idx.size(); ++k) {
    const ParamKind kind = param_kind(spec.family, p.free_idx[k]);
    const Interval b = spec.bounds.empty() ? kind_bounds(kind, table.support()) : spec.bounds[k];
    validate_bounds(kind, b);
    p.bounds.push_back(b);
  }

  const auto full = heuristic_full_init(table, p);
  if (!spec.init.empty() && spec.init.size() != p.free_idx.size())
    throw DomainError("fit: init list length does not match the free parameters");
  for (std::size_t k = 0; k < p.free_idx.size(); ++k) {
    double v = spec.init.empty() ? full[p.free_idx[k]] : spec.init[k];
    v = std::min(p.bounds[k].hi, std::max(p.bounds[k].lo, v));
    p.init.push_back(v);
  }
  return p;
}

std::vector<double> assemble(const Packed& p, const std::vector<double>& free_vals) {
  std::vector<double> full(p.fixed.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < p.fixed.size(); ++i)
    full[i] = p.fixed[i] ? *p.fixed[i] : free_vals[k++];
  return full;
}

// Exact/least-squares ratio inversions, used as extra optimizer starts. A
// table with exact model ratios makes these land on the optimum directly.
std::vector<std::vector<double>> smart_starts(const FrequencyTable& t, const Packed& p) {
  std::vector<std::vector<double>> starts;
  if (p.family == Family::Normal && p.free_idx.size() == 2 && t.size() >= 3) {
    // ln(n_i/n_0) = -(y_i^2 - y_0^2) u + (y_i - y_0) v with u = 1/(2 sigma^2),
    // v = m / sigma^2; least squares via 2x2 normal equations.
    const auto& y = t.support();
    const auto& n = t.counts();
    double a11 = 0, a12 = 0, a22 = 0, b1 = 0, b2 = 0;
    for (std::size_t i = 1; i < y.size(); ++i) {
      const double c1 = -(y[i] * y[i] - y[0] * y[0]);
      const double c2 = y[i] - y[0];
      const double rhs = std::log(n[i] / n[0]);
      a11 += c1 * c1;
      a12 += c1 * c2;
      a22 += c2 * c2;
      b1 += c1 * rhs;
      b2 += c2 * rhs;
    }
    const double det = a11 * a22 - a12 * a12;
    if (std::fabs(det) > 1e-30) {
      const double u = (b1 * a22 - b2 * a12) / det;
      const double v = (a11 * b2 - a12 * b1) / det;
      if (u > 0.0) {
        const double s2 = 1.0 / (2.0 * u);
        starts.push_back({v * s2, std::sqrt(s2)});
      }
    }
  }
  return starts;
}

struct OptOutcome {
  std::vector<double> free_best;
  double fbest = NAN;
  int evals = 0;
  bool at_boundary = false;
};

OptOutcome run_search(const FrequencyTable& table, const Packed& p,
                      const std::function<double(const std::vector<double>&)>& obj) {
  auto starts = smart_starts(table, p);
  starts.push_back(p.init);
  // map full-parameter starts down to free coordinates
  std::vector<std::vector<double>> free_starts;
  for (auto& s : starts) {
    if (s.size() == p.fixed.size()) {
      std::vector<double> fs;
      for (std::size_t i : p.free_idx) fs.push_back(s[i]);
      free_starts.push_back(std::move(fs));
    } else if (s.size() == p.free_idx.size()) {
      free_starts.push_back(std::move(s));
    }
  }
  auto res = minimize_box(obj, p.bounds, free_starts, p.tol);
  return {res.x, res.fx, res.evals, res.at_boundary};
}

EstimationResult finish_fit(const FrequencyTable& table, const Packed& p, Method method,
                            const OptOutcome& run, const char* infeasible_msg) {
  if (!(run.fbest < kPenalty))
    throw ZeroDensity(infeasible_msg);
  EstimationResult r;
  r.method = method;
  r.params = assemble(p, run.free_best);
  r.iterations = run.evals;
  if (run.at_boundary) {
    r.status = FitStatus::ToleranceSet;
    r.diagnostic = "best point sits on the search boundary (infimum fallback)";
  }
  double dv = NAN;
  try {
    dv = dv_model(table, ParametricModel(p.family, r.params));
  } catch (const Error&) {
    // leave dv undefined; params are still reported
  }
  return with_dv(std::move(r), dv);
}

}  // namespace

std::vector<Interval> default_bounds(const FitSpec& spec, const std::vector<double>& support) {
  FrequencyTable probe(support, std::vector<double>(support.size(), 1.0));
  FitSpec s = spec;
  s.bounds.clear();
  const Packed p = pack(probe, s);
  return p.bounds;
}

EstimationResult min_dv(const FrequencyTable& table, const FitSpec& spec) {
  const Packed p = pack(table, spec);
  auto obj = [&](const std::vector<double>& free_vals) {
    try {
      return dv_model(table, ParametricModel(p.family, assemble(p, free_vals)));
    } catch (const Error&) {
      return kPenalty;
    }
  };
  const auto run = run_search(table, p, obj);
  return finish_fit(table, p, Method::MinDv, run,
                    "min-dv: distance undefined everywhere in the search box");
}

EstimationResult new_mle(const FrequencyTable& table, const FitSpec& spec) {
  const Packed p = pack(table, spec);
  const auto& y = table.support();
  const auto f_hat = table.relative_frequencies();
  // negative conditional (multinomial) log-likelihood, per observation:
  //   lse(ld) - sum_i fhat_i ld_i
  auto obj = [&](const std::vector<double>& free_vals) {
    try {
      const ParametricModel m(p.family, assemble(p, free_vals));
      double mx = -INFINITY;
      std::vector<double> ld(y.size());
      for (std::size_t i = 0; i < y.size(); ++i) {
        ld[i] = m.log_density(y[i]);
        if (!std::isfinite(ld[i])) return kPenalty;
        mx = std::max(mx, ld[i]);
      }
      double sum = 0.0, dot = 0.0;
      for (std::size_t i = 0; i < y.size(); ++i) {
        sum += std::exp(ld[i] - mx);
        dot += f_hat[i] * ld[i];
      }
      return mx + std::log(sum) - dot;
    } catch (const Error&) {
      return kPenalty;
    }
  };
  const auto run = run_search(table, p, obj);
  return finish_fit(table, p, Method::NewMLE, run,
                    "new-mle: likelihood undefined everywhere in the search box");
}

EstimationResult new_moments(const FrequencyTable& table, const FitSpec& spec) {
  const Packed p = pack(table, spec);
  const auto& y = table.support();
  const auto f_hat = table.relative_frequencies();
  const std::size_t order = p.free_idx.size();

  std::vector<double> target(order, 0.0);
  for (std::size_t r = 0; r < order; ++r)
    for (std::size_t i = 0; i < y.size(); ++i)
      target[r] += f_hat[i] * std::pow(y[i], static_cast<double>(r + 1));

  // squared, scale-normalized moment-equation residual
  auto obj = [&](const std::vector<double>& free_vals) {
    try {
      const ParametricModel m(p.family, assemble(p, free_vals));
      const AuxiliaryTable aux = auxiliary_of(m, y);
      double ss = 0.0;
      for (std::size_t r = 0; r < order; ++r) {
        double mom = 0.0;
        for (std::size_t i = 0; i < y.size(); ++i)
          mom += aux.probs[i] * std::pow(y[i], static_cast<double>(r + 1));
        const double rel = (mom - target[r]) / (1.0 + std::fabs(target[r]));
        ss += rel * rel;
      }
      return ss;
    } catch (const Error&) {
      return kPenalty;
    }
  };
  auto run = run_search(table, p, obj);

  // A single moment equation can have several roots; collect every local
  // minimum of the residual and keep the root closest to the table in dv.
  if (order == 1 && run.fbest <= 1e-12) {
    const double lo = p.bounds[0].lo, hi = p.bounds[0].hi;
    const bool log_spaced = lo > 0.0 && hi / lo > 100.0;
    constexpr int kGrid = 65;
    std::vector<double> xs(kGrid), fs(kGrid);
    for (int i = 0; i < kGrid; ++i) {
      const double t = static_cast<double>(i) / (kGrid - 1);
      xs[static_cast<std::size_t>(i)] =
          log_spaced ? lo * std::pow(hi / lo, t) : lo + (hi - lo) * t;
      fs[static_cast<std::size_t>(i)] = obj({xs[static_cast<std::size_t>(i)]});
      ++run.evals;
    }
    double best_dv = INFINITY;
    double best_x = run.free_best[0];
    double best_f = run.fbest;
    auto consider = [&](double xv, double fv) {
      if (fv > 1e-12) return;
      double dv = NAN;
      try {
        dv = dv_model(table, ParametricModel(p.family, assemble(p, {xv})));
      } catch (const Error&) {
        return;
      }
      if (std::isfinite(dv) && dv < best_dv) {
        best_dv = dv;
        best_x = xv;
        best_f = fv;
      }
    };
    consider(run.free_best[0], run.fbest);
    for (int i = 0; i < kGrid; ++i) {
      const auto u = static_cast<std::size_t>(i);
      const bool left_ok = i == 0 || fs[u] <= fs[u - 1];
      const bool right_ok = i == kGrid - 1 || fs[u] <= fs[u + 1];
      if (!left_ok || !right_ok) continue;
      const double a = xs[static_cast<std::size_t>(std::max(0, i - 1))];
      const double b = xs[static_cast<std::size_t>(std::min(kGrid - 1, i + 1))];
      if (!(a < b)) continue;
      const auto pol = minimize_scalar([&](double v) { return obj({v}); }, a, b, p.tol);
      run.evals += pol.evals;
      consider(pol.x, pol.fx);
    }
    if (best_x != run.free_best[0]) {
      run.free_best = {best_x};
      run.fbest = best_f;
      const double edge = 2.0 * p.tol * (1.0 + std::fabs(best_x)) + 4e-16 * (1.0 + std::fabs(best_x));
      run.at_boundary = (best_x - lo <= edge) || (hi - best_x <= edge);
    }
  }

  EstimationResult r = finish_fit(table, p, Method::NewMoments, run,
                                  "new-moments: auxiliary distribution undefined in the box");
  r.residual = std::sqrt(run.fbest);
  if (r.residual > 1e-6) {
    r.status = FitStatus::NoSolution;
    r.diagnostic = "no moment-equation root inside the bounds; reporting the best point";
  }
  return r;
}

EstimationResult classical_truncated_mle(const FrequencyTable& table, const FitSpec& spec,
                                         const Region& observed_region) {
  if (observed_region.empty())
    throw DomainError("classical-truncated: empty observed region");
  const Packed p = pack(table, spec);
  const auto& y = table.support();
  const auto f_hat = table.relative_frequencies();
  // negative truncated log-likelihood per observation:
  //   ln P_theta(region) - sum_i fhat_i ln f(y_i, theta)
  auto obj = [&](const std::vector<double>& free_vals) {
    try {
      const ParametricModel m(p.family, assemble(p, free_vals));
      const double prob = m.region_probability(observed_region);
      if (!(prob > 0.0)) return kPenalty;
      double dot = 0.0;
      for (std::size_t i = 0; i < y.size(); ++i) {
        const double ld = m.log_density(y[i]);
        if (!std::isfinite(ld)) return kPenalty;
        dot += f_hat[i] * ld;
      }
      return std::log(prob) - dot;
    } catch (const Error&) {
      return kPenalty;
    }
  };
  const auto run = run_search(table, p, obj);
  return finish_fit(table, p, Method::ClassicalTruncatedMLE, run,
                    "classical-truncated: observed region has zero probability in the box");
}

PerturbationSweep perturbation_sweep(const ParametricModel& true_model, double x, double y,
                                     const std::vector<double>& epsilons) {
  if (epsilons.empty()) throw DomainError("sweep: empty epsilon list");
  for (std::size_t i = 0; i < epsilons.size(); ++i) {
    if (!(epsilons[i] >= 0.0) || !std::isfinite(epsilons[i]))
      throw DomainError("sweep: epsilons must be non-negative");
    if (i > 0 && epsilons[i] >= epsilons[i - 1])
      throw DomainError("sweep: epsilons must be strictly decreasing");
  }
  if (x == y) throw DegenerateSupport("sweep: coincident observations");

  const double base_ratio = true_model.density(x) / true_model.density(y);
  if (!(base_ratio > 0.0) || !std::isfinite(base_ratio))
    throw ZeroDensity("sweep: model density vanishes at a support point");

  PerturbationSweep sweep;
  sweep.epsilons = epsilons;
  for (double eps : epsilons) {
    const double ratio = base_ratio + eps;
    if (!(ratio > 0.0)) throw DomainError("sweep: perturbed ratio is non-positive");
    EstimationResult est;
    switch (true_model.family()) {
      case Family::Exponential:
        est = exp_rate_two_point(x, y, ratio, 1.0);
        break;
      case Family::Normal:
        est = normal_mean_two_point(x, y, ratio, 1.0, true_model.params()[1]);
        break;
      default:
        throw UnsupportedFamily("sweep: only exponential and normal-mean sweeps are defined");
    }
    if (est.params.empty())
      throw DomainError("sweep: closed form reported no solution at epsilon " +
                        std::to_string(eps));
    sweep.estimates.push_back(est.params);
  }

  // least-squares slope of the first parameter against epsilon
  const std::size_t n = epsilons.size();
  if (n >= 2) {
    double me = 0.0, mv = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      me += epsilons[i];
      mv += sweep.estimates[i][0];
    }
    me /= static_cast<double>(n);
    mv /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double dx = epsilons[i] - me;
      sxx += dx * dx;
      sxy += dx * (sweep.estimates[i][0] - mv);
    }
    sweep.slope = sxx > 0.0 ? sxy / sxx : 0.0;
  }
  return sweep;
}

}  // namespace vdist
