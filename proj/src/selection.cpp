#include "vdist/selection.hpp"

#include <cmath>

#include "vdist/errors.hpp"
#include "vdist/metric.hpp"

namespace vdist {

SelectionReport select(const FrequencyTable& table,
                       const std::vector<ParametricModel>& candidates) {
  if (candidates.size() < 2)
    throw SelectionImpossible("select: at least two candidate models are required");

  SelectionReport report;
  report.candidates.reserve(candidates.size());
  int evaluable = 0;
  for (const auto& model : candidates) {
    CandidateScore score{model, NAN, false, ""};
    try {
      score.dv = dv_model(table, model);
      ++evaluable;
    } catch (const ZeroDensity& e) {
      score.disqualified = true;
      score.reason = e.what();
    }
    report.candidates.push_back(std::move(score));
  }
  if (evaluable < 2)
    throw SelectionImpossible("select: fewer than two candidates have positive density on the support");

  int winner = -1, runner = -1;
  for (int i = 0; i < static_cast<int>(report.candidates.size()); ++i) {
    const auto& c = report.candidates[static_cast<std::size_t>(i)];
    if (c.disqualified) continue;
    if (winner < 0 || c.dv < report.candidates[static_cast<std::size_t>(winner)].dv) {
      runner = winner;
      winner = i;
    } else if (runner < 0 || c.dv < report.candidates[static_cast<std::size_t>(runner)].dv) {
      runner = i;
    }
  }
  report.winner_index = winner;
  report.margin = report.candidates[static_cast<std::size_t>(runner)].dv -
                  report.candidates[static_cast<std::size_t>(winner)].dv;
  return report;
}

}  // namespace vdist
