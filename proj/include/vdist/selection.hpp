#pragma once

#include <string>
#include <vector>

#include "vdist/distributions.hpp"
#include "vdist/tables.hpp"

namespace vdist {

struct CandidateScore {
  ParametricModel model;
  double dv = NAN;           // NAN when disqualified
  bool disqualified = false; // zero density somewhere on the table support
  std::string reason;
};

struct SelectionReport {
  std::vector<CandidateScore> candidates;  // original order
  int winner_index = -1;                   // index into candidates
  double margin = 0.0;                     // runner-up dv minus winner dv
};

// Ranks fully specified candidate models by dv against the table. Ties break
// toward the earlier candidate; fewer than two evaluable candidates is an
// error.
SelectionReport select(const FrequencyTable& table, const std::vector<ParametricModel>& candidates);

}  // namespace vdist
