#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vdist/interval.hpp"

namespace vdist {

enum class Family { Exponential, Normal, Binomial, Poisson, Weibull, Gamma };

enum class SupportKind { HalfLine, RealLine, IntegerRange, NonNegativeIntegers };

// Lowercase name used in the CLI and in JSON documents.
std::string family_name(Family f);
std::optional<Family> family_from_name(std::string_view name);

// Parameter names in storage order, e.g. {"m", "sigma"} for Normal.
const std::vector<std::string>& param_names(Family f);

// A fully specified member of one of the six families. Immutable after
// construction; the constructor validates the parameter constraints.
//
// Parameter order: Exponential {rate}; Normal {m, sigma}; Binomial {n, p};
// Poisson {lambda}; Weibull {shape, scale}; Gamma {shape, rate}.
class ParametricModel {
 public:
  ParametricModel(Family family, std::vector<double> params);

  static ParametricModel exponential(double rate);
  static ParametricModel normal(double m, double sigma);
  static ParametricModel binomial(int n, double p);
  static ParametricModel poisson(double lambda);
  static ParametricModel weibull(double shape, double scale);
  static ParametricModel gamma(double shape, double rate);

  Family family() const { return family_; }
  const std::vector<double>& params() const { return params_; }
  bool discrete() const;
  SupportKind support_kind() const;
  Interval support() const;  // numeric hull of the support
  bool in_support(double x) const;

  // pdf (continuous) or pmf (discrete); exactly 0 outside the support.
  double density(double x) const;
  // ln density; -inf outside the support or on underflow.
  double log_density(double x) const;
  // P(X <= x).
  double cdf(double x) const;

  // `count` draws from a stream fully determined by (family, params, seed).
  std::vector<double> sample(std::size_t count, std::uint64_t seed) const;

  // Probability of a union of half-open intervals plus a value set (value
  // points carry mass only for discrete families).
  double region_probability(const Region& region) const;

  std::string describe() const;  // e.g. "normal(0, 1)"

 private:
  Family family_;
  std::vector<double> params_;
};

// Natural (canonical exponential-family) parameterization:
//   f(x) = K(x) * exp{ sum_k theta_k T_k(x) + A(theta) }.
// `domain` is a per-component interval box, hence convex.
struct NaturalForm {
  int dim = 0;
  std::function<double(double)> log_carrier;                        // ln K(x)
  std::vector<std::function<double(double)>> stats;                 // T_k(x)
  std::function<double(const std::vector<double>&)> log_normalizer; // A(theta)
  std::vector<Interval> domain;                                     // open box
  std::vector<double> theta;  // natural parameters of the source model

  bool contains(const std::vector<double>& th) const;
  // ln K(x) + sum_k th_k T_k(x) + A(th)
  double log_density(double x, const std::vector<double>& th) const;
};

// Natural form of the model. Implemented for Exponential, Poisson, Normal
// (two-parameter), Gamma (shape treated as known) and Binomial (n treated as
// known); anything else throws UnsupportedFamily.
NaturalForm natural_form(const ParametricModel& m);

// One-parameter natural form of a Normal with sigma held at the model's value.
NaturalForm normal_mean_natural_form(const ParametricModel& m);

}  // namespace vdist
