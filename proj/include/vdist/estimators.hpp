#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "vdist/distributions.hpp"
#include "vdist/interval.hpp"
#include "vdist/tables.hpp"

namespace vdist {

enum class Method {
  ClosedForm,
  MinDv,
  NewMLE,
  NewMoments,
  ClassicalMLE,
  ClassicalTruncatedMLE,
  WeightedPairwise,
};

enum class FitStatus { Converged, ToleranceSet, NoSolution, Degenerate };

std::string method_name(Method m);
std::string status_name(FitStatus s);

// dv_at_optimum <= this defines the `exact` flag.
inline constexpr double kExactTolerance = 1e-9;

struct EstimationResult {
  std::vector<double> params;       // empty when status == NoSolution
  double dv_at_optimum = NAN;       // NAN when no parameters were produced
  bool exact = false;               // dv_at_optimum <= kExactTolerance
  Method method = Method::ClosedForm;
  int iterations = 0;               // objective evaluations for iterative methods
  FitStatus status = FitStatus::Converged;
  std::string diagnostic;           // reason for NoSolution / Degenerate / ToleranceSet
  double residual = NAN;            // moment-equation residual norm (NewMoments)
  int skipped_pairs = 0;            // inadmissible pairs dropped (WeightedPairwise)
};

// ---- two-point closed forms ----

// rate = (ln n1 - ln n2) / (y - x); non-positive result -> NoSolution.
EstimationResult exp_rate_two_point(double x, double y, double n1, double n2);

// rate = (n1 + n2) / (n1 x + n2 y), the grouped complete-sample MLE.
EstimationResult exp_rate_classical_two_point(double x, double y, double n1, double n2);

// mean from the two-point ratio equation with sigma known.
EstimationResult normal_mean_two_point(double x, double y, double n1, double n2, double sigma);

// standard deviation from the two-point ratio equation with the mean known;
// three cases: any-sigma (Degenerate), no-solution, and the radical formula.
EstimationResult normal_sigma_two_point(double x, double y, double n1, double n2, double m);

// ---- table-level estimators ----

using TwoPointSolver = std::function<EstimationResult(double x, double y, double n1, double n2)>;

// Count-weighted mean of the two-point closed form over all unordered support
// pairs; inadmissible pairs are skipped and counted.
EstimationResult weighted_pairwise(const FrequencyTable& table, const TwoPointSolver& solver);

// What to fit: which family, which parameters are frozen at known values,
// the box for the free ones, and where to start.
struct FitSpec {
  Family family = Family::Exponential;
  std::vector<std::optional<double>> fixed;  // per family parameter; empty = all free
  std::vector<Interval> bounds;              // per free parameter; empty = defaults
  std::vector<double> init;                  // per free parameter; empty = heuristic
  double tol = 1e-10;
};

// Default search boxes: positive scale-like parameters in [1e-6, 1e6], means
// in data range +/- 10 ranges, probabilities in [1e-6, 1 - 1e-6].
std::vector<Interval> default_bounds(const FitSpec& spec, const std::vector<double>& support);

EstimationResult min_dv(const FrequencyTable& table, const FitSpec& spec);

// Maximizes sum_i n_i ln fbar_theta(y_i) — the likelihood of the auxiliary
// (renormalized) distribution, i.e. a multinomial over the observed classes.
EstimationResult new_mle(const FrequencyTable& table, const FitSpec& spec);

// Matches the first dim-theta moments of the auxiliary distribution to the
// empirical ones by least-squares root finding.
EstimationResult new_moments(const FrequencyTable& table, const FitSpec& spec);

// Maximizes sum_i n_i [ln f(y_i, theta) - ln P_theta(observed_region)].
EstimationResult classical_truncated_mle(const FrequencyTable& table, const FitSpec& spec,
                                         const Region& observed_region);

// ---- perturbation study ----

struct PerturbationSweep {
  std::vector<double> epsilons;                // decreasing, positive (0 allowed last)
  std::vector<std::vector<double>> estimates;  // fitted parameter vector per epsilon
  double slope = 0.0;                          // k in estimate ~ true + k * epsilon
};

// Builds, for each epsilon, the two-point table whose ratio is
// f(x)/f(y) + epsilon and runs the matching closed form (exponential rate or
// normal mean with sigma taken from the model).
PerturbationSweep perturbation_sweep(const ParametricModel& true_model, double x, double y,
                                     const std::vector<double>& epsilons);

}  // namespace vdist
