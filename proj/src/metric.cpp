#include "vdist/metric.hpp"

#include <cmath>
#include <string>

#include "vdist/errors.hpp"

namespace vdist {

namespace {

void require_same_support(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size())
    throw SupportMismatch("dv: supports have different lengths");
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i])
      throw SupportMismatch("dv: supports differ at index " + std::to_string(i));
}

void require_positive(const std::vector<double>& w, const char* what) {
  if (w.size() < 2) throw InsufficientSupport("dv: fewer than 2 support points");
  for (double v : w)
    if (!(v > 0.0) || !std::isfinite(v))
      throw ZeroDensity(std::string("dv: ") + what + " must be strictly positive");
}

// Sum over ordered pairs (i,j), i != j, of |a_i/a_j - b_i/b_j|. Ratios are
// scale-free, so raw counts and normalized frequencies give the same value.
double dv_core(const std::vector<double>& a, const std::vector<double>& b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      sum += std::fabs(a[i] / a[j] - b[i] / b[j]);
      sum += std::fabs(a[j] / a[i] - b[j] / b[i]);
    }
  return sum;
}

}  // namespace

double dv_tables(const FrequencyTable& a, const FrequencyTable& b) {
  require_same_support(a.support(), b.support());
  require_positive(a.counts(), "counts");
  require_positive(b.counts(), "counts");
  return dv_core(a.counts(), b.counts());
}

double dv_tables(const FrequencyTable& a, const AuxiliaryTable& b) {
  require_same_support(a.support(), b.support);
  require_positive(a.counts(), "counts");
  require_positive(b.probs, "probabilities");
  return dv_core(a.counts(), b.probs);
}

double dv_tables(const AuxiliaryTable& a, const AuxiliaryTable& b) {
  require_same_support(a.support, b.support);
  require_positive(a.probs, "probabilities");
  require_positive(b.probs, "probabilities");
  return dv_core(a.probs, b.probs);
}

namespace {

std::vector<double> support_log_densities(const FrequencyTable& table,
                                          const ParametricModel& model) {
  std::vector<double> logd(table.size());
  for (std::size_t i = 0; i < table.size(); ++i) {
    logd[i] = model.log_density(table.support()[i]);
    if (!std::isfinite(logd[i]))
      throw ZeroDensity(model.describe() + ": zero density at support point " +
                        std::to_string(table.support()[i]));
  }
  return logd;
}

}  // namespace

double dv_model(const FrequencyTable& table, const ParametricModel& model) {
  require_positive(table.counts(), "counts");
  const auto logd = support_log_densities(table, model);
  const auto& n = table.counts();
  double sum = 0.0;
  for (std::size_t i = 0; i < n.size(); ++i)
    for (std::size_t j = i + 1; j < n.size(); ++j) {
      sum += std::fabs(n[i] / n[j] - std::exp(logd[i] - logd[j]));
      sum += std::fabs(n[j] / n[i] - std::exp(logd[j] - logd[i]));
    }
  return sum;
}

std::vector<PairwiseDelta> dv_model_terms(const FrequencyTable& table,
                                          const ParametricModel& model) {
  require_positive(table.counts(), "counts");
  const auto logd = support_log_densities(table, model);
  const auto& n = table.counts();
  std::vector<PairwiseDelta> terms;
  terms.reserve(n.size() * (n.size() - 1));
  for (std::size_t i = 0; i < n.size(); ++i)
    for (std::size_t j = 0; j < n.size(); ++j) {
      if (i == j) continue;
      terms.push_back({i, j, std::fabs(n[i] / n[j] - std::exp(logd[i] - logd[j]))});
    }
  return terms;
}

ConvexityWitness convexity_witness(const NaturalForm& nf, const FrequencyTable& table,
                                   const std::vector<double>& theta1,
                                   const std::vector<double>& theta2, double lambda_weight) {
  if (!(lambda_weight >= 0.0 && lambda_weight <= 1.0))
    throw DomainError("convexity: weight must lie in [0,1]");
  if (!nf.contains(theta1) || !nf.contains(theta2))
    throw DomainError("convexity: endpoint outside the natural domain");
  std::vector<double> combo(theta1.size());
  for (std::size_t k = 0; k < combo.size(); ++k)
    combo[k] = lambda_weight * theta1[k] + (1.0 - lambda_weight) * theta2[k];
  if (!nf.contains(combo))
    throw DomainError("convexity: combination outside the natural domain");

  const auto& y = table.support();
  const auto& n = table.counts();
  const std::size_t k = y.size();
  std::vector<double> log_carrier(k);
  std::vector<std::vector<double>> t(static_cast<std::size_t>(nf.dim), std::vector<double>(k));
  for (std::size_t i = 0; i < k; ++i) {
    log_carrier[i] = nf.log_carrier(y[i]);
    for (int d = 0; d < nf.dim; ++d) t[static_cast<std::size_t>(d)][i] = nf.stats[static_cast<std::size_t>(d)](y[i]);
  }

  // Sum of delta_ij(theta) = |C_ij exp{sum_k theta_k (T_k(y_i) - T_k(y_j))} - n_i/n_j|
  // over ordered pairs; C_ij = K(y_i)/K(y_j).
  auto pair_sum = [&](const std::vector<double>& th) {
    double sum = 0.0;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) {
        if (i == j) continue;
        double expo = log_carrier[i] - log_carrier[j];
        for (int d = 0; d < nf.dim; ++d) {
          const auto& td = t[static_cast<std::size_t>(d)];
          expo += th[static_cast<std::size_t>(d)] * (td[i] - td[j]);
        }
        sum += std::fabs(std::exp(expo) - n[i] / n[j]);
      }
    return sum;
  };

  ConvexityWitness w;
  w.lhs = pair_sum(combo);
  w.rhs = lambda_weight * pair_sum(theta1) + (1.0 - lambda_weight) * pair_sum(theta2);
  return w;
}

}  // namespace vdist
