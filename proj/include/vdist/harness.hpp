#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vdist/tables.hpp"

namespace vdist {

// Reading of a two-argument gamma such as "G(2, 0.5)": second argument as
// rate or as scale.
enum class GammaConvention { Rate, Scale };

std::string gamma_convention_name(GammaConvention c);

struct ExperimentSpec {
  std::string name;
  std::string generator;   // model description(s)
  int sample_size = 0;
  int replicates = 0;
  std::string truncation;  // empty when none
  std::string binning;
  std::vector<std::string> candidates;
  std::uint64_t seed = 0;
  std::string gamma_convention;  // weibull-gamma study only
};

struct GeneratorAccuracy {
  std::string generator;
  int correct = 0;
  int evaluated = 0;
  int inconclusive = 0;
  double accuracy = 0.0;  // correct / evaluated
};

// One computed-vs-published comparison of the normal-table study.
struct NormalCell {
  std::string row;      // "m_dv", "sigma_clh", ...
  double column = 0.0;  // the count heading the table column
  double computed = NAN;
  double published = NAN;
  double delta = NAN;
  std::string note;
};

struct ErrorStats {
  double mean = NAN;
  double median = NAN;
  std::vector<double> deciles;  // 10th..90th
};

struct ExperimentReport {
  ExperimentSpec spec;
  std::vector<GeneratorAccuracy> accuracies;  // identification studies
  std::vector<NormalCell> cells;              // normal-table study
  ErrorStats error_stats;                     // |delta| statistics over cells
  int inconclusive = 0;
  double wall_seconds = 0.0;
  std::string per_replicate_header;
  std::vector<std::string> per_replicate;     // CSV rows, one per replicate outcome
  std::optional<FrequencyTable> sample_table; // first evaluable empirical table
};

// Samples of size 100 from B(8, 0.1) and B(15, 0.15), kept on {0,1,2,3},
// identified against both candidates; per-generator accuracy.
ExperimentReport run_binomial_identification(int replicates, std::uint64_t seed);

// 1000 draws from Weibull(1.2, 1.5) per replicate, values below 1.25 dropped,
// 11 equal-width classes, identified against the Weibull and a two-argument
// gamma read under the requested convention.
ExperimentReport run_weibull_gamma(int replicates, std::uint64_t seed, GammaConvention conv);

// Recomputes the published two- and three-point normal estimates from their
// fixed input counts and reports computed-vs-published deltas.
ExperimentReport run_normal_table();

// Median |rate - 1| of the minimum-dv fit on Exponential(1) samples grouped
// on a fixed-width grid, one median per sample size. Shared by the
// consistency property check.
std::vector<double> consistency_median_errors(const std::vector<int>& sizes, int replicates,
                                              std::uint64_t seed, double grid_width);

}  // namespace vdist
