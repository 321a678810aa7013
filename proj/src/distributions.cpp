#include "vdist/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "vdist/errors.hpp"
#include "vdist/rng.hpp"

namespace vdist {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kLnSqrt2Pi = 0.91893853320467274178;  // ln sqrt(2*pi)

bool is_integral(double x) {
  return std::isfinite(x) && x == std::floor(x) && std::fabs(x) < 9.0e15;
}

// Regularized lower incomplete gamma P(a, x), series for x < a+1 and a
// continued fraction (modified Lentz) otherwise.
double gamma_p(double a, double x) {
  if (x <= 0.0) return 0.0;
  const double lg = std::lgamma(a);
  if (x < a + 1.0) {
    double term = 1.0 / a;
    double sum = term;
    for (int n = 1; n < 500; ++n) {
      term *= x / (a + n);
      sum += term;
      if (std::fabs(term) < std::fabs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - lg);
  }
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 500; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-16) break;
  }
  const double q = std::exp(-x + a * std::log(x) - lg) * h;
  return 1.0 - q;
}

double std_normal_draw(Rng& rng) {
  const double u1 = rng.uniform01();
  const double u2 = rng.uniform01();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
}

// Marsaglia-Tsang, unit rate.
double gamma_draw(Rng& rng, double shape) {
  if (shape < 1.0) {
    const double u = rng.uniform01();
    return gamma_draw(rng, shape + 1.0) * std::pow(u, 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    const double x = std_normal_draw(rng);
    double v = 1.0 + c * x;
    if (v <= 0.0) continue;
    v = v * v * v;
    const double u = rng.uniform01();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
}

// Knuth's product method in chunks, so the acceptance probability never
// underflows for large lambda.
double poisson_draw(Rng& rng, double lambda) {
  long total = 0;
  double remaining = lambda;
  while (remaining > 0.0) {
    const double step = remaining > 30.0 ? 30.0 : remaining;
    remaining -= step;
    const double limit = std::exp(-step);
    double p = 1.0;
    long k = -1;
    do {
      ++k;
      p *= rng.uniform01();
    } while (p > limit);
    total += k;
  }
  return static_cast<double>(total);
}

}  // namespace

std::string family_name(Family f) {
  switch (f) {
    case Family::Exponential: return "exponential";
    case Family::Normal: return "normal";
    case Family::Binomial: return "binomial";
    case Family::Poisson: return "poisson";
    case Family::Weibull: return "weibull";
    case Family::Gamma: return "gamma";
  }
  return "?";
}

std::optional<Family> family_from_name(std::string_view name) {
  if (name == "exponential") return Family::Exponential;
  if (name == "normal") return Family::Normal;
  if (name == "binomial") return Family::Binomial;
  if (name == "poisson") return Family::Poisson;
  if (name == "weibull") return Family::Weibull;
  if (name == "gamma") return Family::Gamma;
  return std::nullopt;
}

const std::vector<std::string>& param_names(Family f) {
  static const std::vector<std::string> exp_names{"rate"};
  static const std::vector<std::string> normal_names{"m", "sigma"};
  static const std::vector<std::string> binom_names{"n", "p"};
  static const std::vector<std::string> pois_names{"lambda"};
  static const std::vector<std::string> weib_names{"shape", "scale"};
  static const std::vector<std::string> gamma_names{"shape", "rate"};
  switch (f) {
    case Family::Exponential: return exp_names;
    case Family::Normal: return normal_names;
    case Family::Binomial: return binom_names;
    case Family::Poisson: return pois_names;
    case Family::Weibull: return weib_names;
    case Family::Gamma: return gamma_names;
  }
  return exp_names;
}

ParametricModel::ParametricModel(Family family, std::vector<double> params)
    : family_(family), params_(std::move(params)) {
  const auto& names = param_names(family_);
  if (params_.size() != names.size())
    throw ConstraintViolation(family_name(family_) + " expects " +
                              std::to_string(names.size()) + " parameters, got " +
                              std::to_string(params_.size()));
  for (double p : params_)
    if (!std::isfinite(p))
      throw ConstraintViolation(family_name(family_) + ": non-finite parameter");
  switch (family_) {
    case Family::Exponential:
      if (params_[0] <= 0.0) throw ConstraintViolation("exponential: rate must be > 0");
      break;
    case Family::Normal:
      if (params_[1] <= 0.0) throw ConstraintViolation("normal: sigma must be > 0");
      break;
    case Family::Binomial:
      if (!is_integral(params_[0]) || params_[0] < 1.0)
        throw ConstraintViolation("binomial: n must be a positive integer");
      if (params_[1] <= 0.0 || params_[1] >= 1.0)
        throw ConstraintViolation("binomial: p must lie in (0,1)");
      break;
    case Family::Poisson:
      if (params_[0] <= 0.0) throw ConstraintViolation("poisson: lambda must be > 0");
      break;
    case Family::Weibull:
      if (params_[0] <= 0.0 || params_[1] <= 0.0)
        throw ConstraintViolation("weibull: shape and scale must be > 0");
      break;
    case Family::Gamma:
      if (params_[0] <= 0.0 || params_[1] <= 0.0)
        throw ConstraintViolation("gamma: shape and rate must be > 0");
      break;
  }
}

ParametricModel ParametricModel::exponential(double rate) {
  return {Family::Exponential, {rate}};
}
ParametricModel ParametricModel::normal(double m, double sigma) {
  return {Family::Normal, {m, sigma}};
}
ParametricModel ParametricModel::binomial(int n, double p) {
  return {Family::Binomial, {static_cast<double>(n), p}};
}
ParametricModel ParametricModel::poisson(double lambda) {
  return {Family::Poisson, {lambda}};
}
ParametricModel ParametricModel::weibull(double shape, double scale) {
  return {Family::Weibull, {shape, scale}};
}
ParametricModel ParametricModel::gamma(double shape, double rate) {
  return {Family::Gamma, {shape, rate}};
}

bool ParametricModel::discrete() const {
  return family_ == Family::Binomial || family_ == Family::Poisson;
}

SupportKind ParametricModel::support_kind() const {
  switch (family_) {
    case Family::Exponential:
    case Family::Weibull:
    case Family::Gamma: return SupportKind::HalfLine;
    case Family::Normal: return SupportKind::RealLine;
    case Family::Binomial: return SupportKind::IntegerRange;
    case Family::Poisson: return SupportKind::NonNegativeIntegers;
  }
  return SupportKind::RealLine;
}

Interval ParametricModel::support() const {
  switch (family_) {
    case Family::Exponential:
    case Family::Weibull:
    case Family::Gamma: return {0.0, INFINITY};
    case Family::Normal: return {-INFINITY, INFINITY};
    case Family::Binomial: return {0.0, params_[0]};
    case Family::Poisson: return {0.0, INFINITY};
  }
  return {-INFINITY, INFINITY};
}

bool ParametricModel::in_support(double x) const {
  if (!std::isfinite(x)) return false;
  switch (family_) {
    case Family::Exponential: return x >= 0.0;
    case Family::Weibull:
    case Family::Gamma: return x > 0.0;  // density may blow up at 0 for shape < 1
    case Family::Normal: return true;
    case Family::Binomial: return is_integral(x) && x >= 0.0 && x <= params_[0];
    case Family::Poisson: return is_integral(x) && x >= 0.0;
  }
  return false;
}

double ParametricModel::log_density(double x) const {
  if (!in_support(x)) return -INFINITY;
  switch (family_) {
    case Family::Exponential: {
      const double lam = params_[0];
      return std::log(lam) - lam * x;
    }
    case Family::Normal: {
      const double z = (x - params_[0]) / params_[1];
      return -0.5 * z * z - std::log(params_[1]) - kLnSqrt2Pi;
    }
    case Family::Binomial: {
      const double n = params_[0], p = params_[1];
      return std::lgamma(n + 1.0) - std::lgamma(x + 1.0) - std::lgamma(n - x + 1.0) +
             x * std::log(p) + (n - x) * std::log1p(-p);
    }
    case Family::Poisson: {
      const double lam = params_[0];
      return x * std::log(lam) - lam - std::lgamma(x + 1.0);
    }
    case Family::Weibull: {
      const double k = params_[0], s = params_[1];
      const double z = x / s;
      return std::log(k) - std::log(s) + (k - 1.0) * std::log(z) - std::pow(z, k);
    }
    case Family::Gamma: {
      const double a = params_[0], r = params_[1];
      return a * std::log(r) + (a - 1.0) * std::log(x) - r * x - std::lgamma(a);
    }
  }
  return -INFINITY;
}

double ParametricModel::density(double x) const {
  const double l = log_density(x);
  return std::isfinite(l) ? std::exp(l) : 0.0;
}

double ParametricModel::cdf(double x) const {
  if (std::isnan(x)) return NAN;
  switch (family_) {
    case Family::Exponential:
      return x <= 0.0 ? 0.0 : -std::expm1(-params_[0] * x);
    case Family::Normal:
      return 0.5 * std::erfc(-(x - params_[0]) / (params_[1] * std::sqrt(2.0)));
    case Family::Binomial: {
      if (x < 0.0) return 0.0;
      const double n = params_[0];
      if (x >= n) return 1.0;
      double sum = 0.0;
      for (double k = 0.0; k <= std::floor(x); ++k) sum += density(k);
      return std::min(sum, 1.0);
    }
    case Family::Poisson: {
      if (x < 0.0) return 0.0;
      if (std::isinf(x)) return 1.0;
      return 1.0 - gamma_p(std::floor(x) + 1.0, params_[0]);
    }
    case Family::Weibull: {
      if (x <= 0.0) return 0.0;
      return -std::expm1(-std::pow(x / params_[1], params_[0]));
    }
    case Family::Gamma:
      return x <= 0.0 ? 0.0 : gamma_p(params_[0], params_[1] * x);
  }
  return NAN;
}

std::vector<double> ParametricModel::sample(std::size_t count, std::uint64_t seed) const {
  if (count < 1) throw DomainError("sample: count must be >= 1");
  Rng rng(seed);
  std::vector<double> out(count);
  switch (family_) {
    case Family::Exponential: {
      const double lam = params_[0];
      for (auto& v : out) v = -std::log(rng.uniform01()) / lam;
      break;
    }
    case Family::Normal: {
      const double m = params_[0], s = params_[1];
      for (auto& v : out) v = m + s * std_normal_draw(rng);
      break;
    }
    case Family::Binomial: {
      const long n = static_cast<long>(params_[0]);
      const double p = params_[1];
      for (auto& v : out) {
        long k = 0;
        for (long i = 0; i < n; ++i)
          if (rng.uniform01() < p) ++k;
        v = static_cast<double>(k);
      }
      break;
    }
    case Family::Poisson: {
      for (auto& v : out) v = poisson_draw(rng, params_[0]);
      break;
    }
    case Family::Weibull: {
      const double k = params_[0], s = params_[1];
      for (auto& v : out) v = s * std::pow(-std::log(rng.uniform01()), 1.0 / k);
      break;
    }
    case Family::Gamma: {
      const double a = params_[0], r = params_[1];
      for (auto& v : out) v = gamma_draw(rng, a) / r;
      break;
    }
  }
  return out;
}

double ParametricModel::region_probability(const Region& region) const {
  double total = 0.0;
  if (discrete()) {
    for (const auto& iv : region.intervals) {
      // P(lo <= X < hi) through the cdf at the largest integers below each end.
      const double a = is_integral(iv.lo) ? iv.lo - 1.0 : std::floor(iv.lo);
      const double b = std::isinf(iv.hi) ? INFINITY
                                         : (is_integral(iv.hi) ? iv.hi - 1.0 : std::floor(iv.hi));
      const double ca = iv.lo <= 0.0 && std::isinf(iv.lo) ? 0.0 : cdf(a);
      const double cb = std::isinf(b) ? 1.0 : cdf(b);
      total += std::max(0.0, cb - ca);
    }
    for (double v : region.values) total += density(v);
  } else {
    for (const auto& iv : region.intervals)
      total += std::max(0.0, cdf(iv.hi) - cdf(iv.lo));
  }
  return std::min(total, 1.0);
}

std::string ParametricModel::describe() const {
  char buf[160];
  switch (family_) {
    case Family::Binomial:
      std::snprintf(buf, sizeof buf, "binomial(%ld, %g)",
                    static_cast<long>(params_[0]), params_[1]);
      break;
    default: {
      std::string s = family_name(family_) + "(";
      for (std::size_t i = 0; i < params_.size(); ++i) {
        char num[40];
        std::snprintf(num, sizeof num, "%g", params_[i]);
        s += num;
        if (i + 1 < params_.size()) s += ", ";
      }
      s += ")";
      return s;
    }
  }
  return buf;
}

bool NaturalForm::contains(const std::vector<double>& th) const {
  if (static_cast<int>(th.size()) != dim) return false;
  for (int k = 0; k < dim; ++k) {
    if (!std::isfinite(th[k])) return false;
    if (!(th[k] > domain[k].lo && th[k] < domain[k].hi)) return false;
  }
  return true;
}

double NaturalForm::log_density(double x, const std::vector<double>& th) const {
  double acc = log_carrier(x) + log_normalizer(th);
  for (int k = 0; k < dim; ++k) acc += th[k] * stats[k](x);
  return acc;
}

NaturalForm natural_form(const ParametricModel& m) {
  NaturalForm nf;
  switch (m.family()) {
    case Family::Exponential: {
      const double lam = m.params()[0];
      nf.dim = 1;
      nf.log_carrier = [](double) { return 0.0; };
      nf.stats = {[](double x) { return x; }};
      nf.log_normalizer = [](const std::vector<double>& th) { return std::log(-th[0]); };
      nf.domain = {Interval{-INFINITY, 0.0}};
      nf.theta = {-lam};
      return nf;
    }
    case Family::Poisson: {
      const double lam = m.params()[0];
      nf.dim = 1;
      nf.log_carrier = [](double x) { return -std::lgamma(x + 1.0); };
      nf.stats = {[](double x) { return x; }};
      nf.log_normalizer = [](const std::vector<double>& th) { return -std::exp(th[0]); };
      nf.domain = {Interval{-INFINITY, INFINITY}};
      nf.theta = {std::log(lam)};
      return nf;
    }
    case Family::Normal: {
      const double mu = m.params()[0], s = m.params()[1];
      nf.dim = 2;
      nf.log_carrier = [](double) { return -kLnSqrt2Pi; };
      nf.stats = {[](double x) { return x; }, [](double x) { return x * x; }};
      nf.log_normalizer = [](const std::vector<double>& th) {
        return th[0] * th[0] / (4.0 * th[1]) + 0.5 * std::log(-2.0 * th[1]);
      };
      nf.domain = {Interval{-INFINITY, INFINITY}, Interval{-INFINITY, 0.0}};
      nf.theta = {mu / (s * s), -1.0 / (2.0 * s * s)};
      return nf;
    }
    case Family::Gamma: {
      const double a = m.params()[0], r = m.params()[1];
      nf.dim = 1;
      nf.log_carrier = [a](double x) { return (a - 1.0) * std::log(x) - std::lgamma(a); };
      nf.stats = {[](double x) { return x; }};
      nf.log_normalizer = [a](const std::vector<double>& th) { return a * std::log(-th[0]); };
      nf.domain = {Interval{-INFINITY, 0.0}};
      nf.theta = {-r};
      return nf;
    }
    case Family::Binomial: {
      const double n = m.params()[0], p = m.params()[1];
      nf.dim = 1;
      nf.log_carrier = [n](double x) {
        return std::lgamma(n + 1.0) - std::lgamma(x + 1.0) - std::lgamma(n - x + 1.0);
      };
      nf.stats = {[](double x) { return x; }};
      nf.log_normalizer = [n](const std::vector<double>& th) {
        const double t = th[0];
        // -n ln(1 + e^t), stable on both sides
        return t > 0.0 ? -n * (t + std::log1p(std::exp(-t))) : -n * std::log1p(std::exp(t));
      };
      nf.domain = {Interval{-INFINITY, INFINITY}};
      nf.theta = {std::log(p / (1.0 - p))};
      return nf;
    }
    case Family::Weibull:
      throw UnsupportedFamily("weibull has no natural form in its shape parameter");
  }
  throw UnsupportedFamily("no natural form for this family");
}

NaturalForm normal_mean_natural_form(const ParametricModel& m) {
  if (m.family() != Family::Normal)
    throw UnsupportedFamily("normal_mean_natural_form expects a normal model");
  const double mu = m.params()[0], s = m.params()[1];
  const double s2 = s * s;
  NaturalForm nf;
  nf.dim = 1;
  nf.log_carrier = [s, s2](double x) {
    return -x * x / (2.0 * s2) - std::log(s) - kLnSqrt2Pi;
  };
  nf.stats = {[](double x) { return x; }};
  nf.log_normalizer = [s2](const std::vector<double>& th) {
    return -th[0] * th[0] * s2 / 2.0;
  };
  nf.domain = {Interval{-INFINITY, INFINITY}};
  nf.theta = {mu / s2};
  return nf;
}

}  // namespace vdist
