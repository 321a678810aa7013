#include "vdist/tables.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <string>

#include "vdist/errors.hpp"

namespace vdist {

Binning Binning::bin_count(int k) {
  if (k < 1) throw DomainError("binning: bin count must be >= 1");
  Binning b;
  b.kind = Kind::BinCount;
  b.bins = k;
  return b;
}

Binning Binning::explicit_edges(std::vector<double> edges) {
  if (edges.size() < 2) throw DomainError("binning: need at least 2 edges");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (!std::isfinite(edges[i])) throw DomainError("binning: non-finite edge");
    if (i > 0 && edges[i] <= edges[i - 1])
      throw DomainError("binning: edges must be strictly increasing");
  }
  Binning b;
  b.kind = Kind::ExplicitEdges;
  b.edges = std::move(edges);
  return b;
}

Binning Binning::discrete_identity() {
  Binning b;
  b.kind = Kind::DiscreteIdentity;
  return b;
}

FrequencyTable::FrequencyTable(std::vector<double> support, std::vector<double> counts,
                               std::optional<std::vector<Interval>> intervals) {
  if (support.size() != counts.size())
    throw ConstraintViolation("table: support and counts lengths differ");
  if (intervals && intervals->size() != support.size())
    throw ConstraintViolation("table: intervals length differs from support");
  const std::size_t n = support.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(support[i]))
      throw ConstraintViolation("table: non-finite support point");
    if (!std::isfinite(counts[i]) || counts[i] < 0.0)
      throw ConstraintViolation("table: counts must be finite and non-negative");
  }

  // Canonical order: ascending support, zero-count classes dropped.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return support[a] < support[b]; });
  for (std::size_t idx : order) {
    if (counts[idx] == 0.0) continue;
    if (!support_.empty() && support[idx] == support_.back())
      throw ConstraintViolation("table: duplicate support point " + std::to_string(support[idx]));
    support_.push_back(support[idx]);
    counts_.push_back(counts[idx]);
    if (intervals) {
      if (!intervals_) intervals_.emplace();
      intervals_->push_back((*intervals)[idx]);
    }
  }
  if (support_.size() < 2)
    throw InsufficientSupport("table: fewer than 2 classes with positive count");
  total_ = std::accumulate(counts_.begin(), counts_.end(), 0.0);
}

std::vector<double> FrequencyTable::relative_frequencies() const {
  std::vector<double> f(counts_.size());
  for (std::size_t i = 0; i < counts_.size(); ++i) f[i] = counts_[i] / total_;
  return f;
}

namespace {

FrequencyTable bin_into_edges(const std::vector<double>& samples,
                              const std::vector<double>& edges) {
  const std::size_t nb = edges.size() - 1;
  std::vector<double> counts(nb, 0.0);
  for (double x : samples) {
    if (x < edges.front() || x > edges.back()) continue;
    // half-open cells [e_i, e_{i+1}); the top edge itself joins the last cell
    std::size_t idx;
    if (x == edges.back()) {
      idx = nb - 1;
    } else {
      idx = static_cast<std::size_t>(
          std::upper_bound(edges.begin(), edges.end(), x) - edges.begin() - 1);
      if (idx >= nb) idx = nb - 1;
    }
    counts[idx] += 1.0;
  }
  std::vector<double> mids(nb);
  std::vector<Interval> cells(nb);
  for (std::size_t i = 0; i < nb; ++i) {
    mids[i] = 0.5 * (edges[i] + edges[i + 1]);
    cells[i] = {edges[i], edges[i + 1]};
  }
  return {std::move(mids), std::move(counts), std::move(cells)};
}

}  // namespace

FrequencyTable from_samples(const std::vector<double>& samples, const Binning& binning) {
  if (samples.empty()) throw InsufficientSupport("binning: no samples");
  for (double x : samples)
    if (!std::isfinite(x)) throw ConstraintViolation("binning: non-finite sample");

  switch (binning.kind) {
    case Binning::Kind::DiscreteIdentity: {
      std::map<double, double> hist;
      for (double x : samples) hist[x] += 1.0;
      std::vector<double> support, counts;
      support.reserve(hist.size());
      counts.reserve(hist.size());
      for (const auto& [v, c] : hist) {
        support.push_back(v);
        counts.push_back(c);
      }
      if (support.size() < 2)
        throw InsufficientSupport("binning: fewer than 2 distinct values");
      return {std::move(support), std::move(counts)};
    }
    case Binning::Kind::BinCount: {
      const auto [mn_it, mx_it] = std::minmax_element(samples.begin(), samples.end());
      const double mn = *mn_it, mx = *mx_it;
      if (mn == mx) throw InsufficientSupport("binning: all samples equal");
      std::vector<double> edges(static_cast<std::size_t>(binning.bins) + 1);
      const double width = (mx - mn) / binning.bins;
      for (std::size_t i = 0; i < edges.size(); ++i)
        edges[i] = mn + width * static_cast<double>(i);
      edges.back() = mx;  // guard against rounding drift
      return bin_into_edges(samples, edges);
    }
    case Binning::Kind::ExplicitEdges:
      return bin_into_edges(samples, binning.edges);
  }
  throw DomainError("binning: unknown kind");
}

std::vector<double> truncate_samples(const std::vector<double>& samples, const Region& region) {
  if (region.empty()) throw DomainError("truncate: empty region");
  std::vector<double> kept;
  kept.reserve(samples.size());
  for (double x : samples)
    if (region.contains(x)) kept.push_back(x);
  double first = NAN;
  bool two_distinct = false;
  for (double x : kept) {
    if (std::isnan(first)) {
      first = x;
    } else if (x != first) {
      two_distinct = true;
      break;
    }
  }
  if (!two_distinct)
    throw InsufficientSupport("truncate: fewer than 2 distinct values inside the region");
  return kept;
}

FrequencyTable truncate_table(const FrequencyTable& table, const Region& region) {
  if (region.empty()) throw DomainError("truncate: empty region");
  std::vector<double> support, counts;
  std::optional<std::vector<Interval>> cells;
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (!region.contains(table.support()[i])) continue;
    support.push_back(table.support()[i]);
    counts.push_back(table.counts()[i]);
    if (table.intervals()) {
      if (!cells) cells.emplace();
      cells->push_back((*table.intervals())[i]);
    }
  }
  if (support.size() < 2)
    throw InsufficientSupport("truncate: fewer than 2 support points inside the region");
  return {std::move(support), std::move(counts), std::move(cells)};
}

namespace {

AuxiliaryTable normalize_log_densities(const std::vector<double>& support,
                                       const std::vector<double>& logd) {
  double mx = -INFINITY;
  for (double l : logd) mx = std::max(mx, l);
  double sum = 0.0;
  for (double l : logd) sum += std::exp(l - mx);
  const double lse = mx + std::log(sum);
  AuxiliaryTable aux;
  aux.support = support;
  aux.probs.resize(logd.size());
  for (std::size_t i = 0; i < logd.size(); ++i) aux.probs[i] = std::exp(logd[i] - lse);
  return aux;
}

void check_support(const std::vector<double>& support) {
  if (support.size() < 2)
    throw InsufficientSupport("auxiliary: need at least 2 support points");
  for (std::size_t i = 0; i < support.size(); ++i) {
    if (!std::isfinite(support[i])) throw DomainError("auxiliary: non-finite support point");
    for (std::size_t j = i + 1; j < support.size(); ++j)
      if (support[i] == support[j]) throw DomainError("auxiliary: duplicate support point");
  }
}

}  // namespace

AuxiliaryTable auxiliary_of(const ParametricModel& model, const std::vector<double>& support) {
  check_support(support);
  std::vector<double> logd(support.size());
  for (std::size_t i = 0; i < support.size(); ++i) {
    logd[i] = model.log_density(support[i]);
    if (!std::isfinite(logd[i]))
      throw ZeroDensity(model.describe() + ": zero density at support point " +
                        std::to_string(support[i]));
  }
  return normalize_log_densities(support, logd);
}

AuxiliaryTable auxiliary_of(const NaturalForm& nf, const std::vector<double>& theta,
                            const std::vector<double>& support) {
  check_support(support);
  if (!nf.contains(theta)) throw DomainError("auxiliary: theta outside the natural domain");
  std::vector<double> logd(support.size());
  for (std::size_t i = 0; i < support.size(); ++i) {
    logd[i] = nf.log_density(support[i], theta);
    if (!std::isfinite(logd[i]))
      throw ZeroDensity("auxiliary: natural form degenerate at support point " +
                        std::to_string(support[i]));
  }
  return normalize_log_densities(support, logd);
}

}  // namespace vdist
