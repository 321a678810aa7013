#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "vdist/distributions.hpp"
#include "vdist/interval.hpp"

namespace vdist {

// How raw samples are grouped into a frequency table.
struct Binning {
  enum class Kind { BinCount, ExplicitEdges, DiscreteIdentity };
  Kind kind = Kind::DiscreteIdentity;
  int bins = 0;                // Kind::BinCount
  std::vector<double> edges;   // Kind::ExplicitEdges, strictly increasing

  static Binning bin_count(int k);
  static Binning explicit_edges(std::vector<double> edges);
  static Binning discrete_identity();
};

// A grouped sample: strictly increasing support y_1..y_k with positive
// counts. Class representatives are interval midpoints when the table came
// from binning; the original class bounds ride along when known.
class FrequencyTable {
 public:
  FrequencyTable(std::vector<double> support, std::vector<double> counts,
                 std::optional<std::vector<Interval>> intervals = std::nullopt);

  std::size_t size() const { return support_.size(); }
  const std::vector<double>& support() const { return support_; }
  const std::vector<double>& counts() const { return counts_; }
  const std::optional<std::vector<Interval>>& intervals() const { return intervals_; }

  double total() const { return total_; }
  double relative_frequency(std::size_t i) const { return counts_[i] / total_; }
  std::vector<double> relative_frequencies() const;

 private:
  std::vector<double> support_;
  std::vector<double> counts_;
  std::optional<std::vector<Interval>> intervals_;
  double total_ = 0.0;
};

// A model's representative on a finite support: density values renormalized
// to sum to one.
struct AuxiliaryTable {
  std::vector<double> support;
  std::vector<double> probs;
  std::size_t size() const { return support.size(); }
};

FrequencyTable from_samples(const std::vector<double>& samples, const Binning& binning);

std::vector<double> truncate_samples(const std::vector<double>& samples, const Region& region);
FrequencyTable truncate_table(const FrequencyTable& table, const Region& region);

AuxiliaryTable auxiliary_of(const ParametricModel& model, const std::vector<double>& support);

// Same renormalization for an explicit natural-form parameter vector.
AuxiliaryTable auxiliary_of(const NaturalForm& nf, const std::vector<double>& theta,
                            const std::vector<double>& support);

}  // namespace vdist
