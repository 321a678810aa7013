#pragma once

#include <cstddef>
#include <vector>

#include "vdist/distributions.hpp"
#include "vdist/tables.hpp"

namespace vdist {

// One ordered-pair term |a_i/a_j - b_i/b_j| of the distance sum.
struct PairwiseDelta {
  std::size_t i = 0;
  std::size_t j = 0;
  double value = 0.0;
};

double dv_tables(const FrequencyTable& a, const FrequencyTable& b);
double dv_tables(const FrequencyTable& a, const AuxiliaryTable& b);
double dv_tables(const AuxiliaryTable& a, const AuxiliaryTable& b);

// Distance between an empirical table and a model, computed through
// log-density differences so extreme support points cannot overflow.
double dv_model(const FrequencyTable& table, const ParametricModel& model);

// All ordered-pair terms of dv_model, in a fixed enumeration order;
// their sum equals dv_model up to summation order.
std::vector<PairwiseDelta> dv_model_terms(const FrequencyTable& table,
                                          const ParametricModel& model);

// Both sides of the convexity inequality for the pair sum of
// delta_ij(theta) = |C_ij * exp{sum_k theta_k (T_k(y_i) - T_k(y_j))} - n_i/n_j|
// evaluated at theta = w*theta1 + (1-w)*theta2. Callers assert lhs <= rhs + 1e-12.
struct ConvexityWitness {
  double lhs = 0.0;
  double rhs = 0.0;
};

ConvexityWitness convexity_witness(const NaturalForm& nf, const FrequencyTable& table,
                                   const std::vector<double>& theta1,
                                   const std::vector<double>& theta2, double lambda_weight);

}  // namespace vdist
