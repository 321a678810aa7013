#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <vector>

#include "doctest.h"
#include "vdist/errors.hpp"
#include "vdist/tables.hpp"

using namespace vdist;

TEST_CASE("frequency table invariants") {
  const FrequencyTable t({0.0, 1.0, 2.0}, {3.0, 2.0, 5.0});
  CHECK(t.size() == 3);
  CHECK(t.total() == doctest::Approx(10.0));
  double sum = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) sum += t.relative_frequency(i);
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));

  // canonicalization: input order does not matter
  const FrequencyTable u({2.0, 0.0, 1.0}, {5.0, 3.0, 2.0});
  CHECK(u.support() == t.support());
  CHECK(u.counts() == t.counts());

  CHECK_THROWS_AS(FrequencyTable({0.0}, {1.0}), InsufficientSupport);
  CHECK_THROWS_AS(FrequencyTable({0.0, 0.0}, {1.0, 2.0}), ConstraintViolation);
  CHECK_THROWS_AS(FrequencyTable({0.0, 1.0}, {1.0, -2.0}), ConstraintViolation);
  CHECK_THROWS_AS(FrequencyTable({0.0, 1.0}, {1.0}), ConstraintViolation);
  // zero-count classes are dropped, and dropping may exhaust the support
  const FrequencyTable z({0.0, 1.0, 2.0}, {1.0, 0.0, 2.0});
  CHECK(z.size() == 2);
  CHECK_THROWS_AS(FrequencyTable({0.0, 1.0}, {1.0, 0.0}), InsufficientSupport);
}

TEST_CASE("from_samples discrete identity") {
  const auto t = from_samples({0.0, 0.0, 0.0, 1.0, 1.0}, Binning::discrete_identity());
  CHECK(t.support() == std::vector<double>{0.0, 1.0});
  CHECK(t.counts() == std::vector<double>{3.0, 2.0});
  CHECK_THROWS_AS(from_samples({2.0, 2.0, 2.0}, Binning::discrete_identity()),
                  InsufficientSupport);
}

TEST_CASE("from_samples bin count") {
  // 20 points spanning [0, 10] into 5 classes -> centers 1,3,5,7,9
  const std::vector<double> samples{0.0, 0.5, 1.9, 1.0, 2.0, 2.5, 3.999, 3.0, 4.0, 5.5,
                                    5.9, 5.0, 6.0, 6.5, 7.5, 7.9, 8.0,  9.0, 9.5, 10.0};
  const auto t = from_samples(samples, Binning::bin_count(5));
  CHECK(t.support() == std::vector<double>{1.0, 3.0, 5.0, 7.0, 9.0});
  CHECK(t.counts() == std::vector<double>{4.0, 4.0, 4.0, 4.0, 4.0});
  REQUIRE(t.intervals().has_value());
  CHECK((*t.intervals())[0].lo == doctest::Approx(0.0));
  CHECK((*t.intervals())[4].hi == doctest::Approx(10.0));

  // empty bins are dropped
  const auto gap = from_samples({0.0, 0.1, 9.9, 10.0}, Binning::bin_count(5));
  CHECK(gap.size() == 2);
  CHECK(gap.support() == std::vector<double>{1.0, 9.0});
}

TEST_CASE("from_samples explicit edges") {
  const auto t = from_samples({0.5, 1.5, 2.5, 1.2}, Binning::explicit_edges({0.0, 1.0, 3.0}));
  CHECK(t.support() == std::vector<double>{0.5, 2.0});
  CHECK(t.counts() == std::vector<double>{1.0, 3.0});
  CHECK_THROWS_AS(Binning::explicit_edges({1.0, 1.0}), ConstraintViolation);
  CHECK_THROWS_AS(Binning::bin_count(0), ConstraintViolation);
}

TEST_CASE("truncation") {
  std::vector<double> support{0, 1, 2, 3, 4, 5, 6, 7, 8};
  std::vector<double> counts{10, 20, 30, 5, 4, 3, 2, 1, 1};
  const FrequencyTable t(support, counts);
  Region keep;
  keep.values = {0.0, 1.0, 2.0, 3.0};
  const auto cut = truncate_table(t, keep);
  CHECK(cut.size() == 4);
  CHECK(cut.counts() == std::vector<double>{10, 20, 30, 5});

  Region tail;
  tail.intervals = {{1.25, INFINITY}};
  const auto vals = truncate_samples({0.5, 1.3, 2.0, 1.0, 4.4}, tail);
  CHECK(vals == std::vector<double>{1.3, 2.0, 4.4});

  Region off;
  off.intervals = {{100.0, 200.0}};
  CHECK_THROWS_AS(truncate_table(t, off), InsufficientSupport);
  CHECK_THROWS_AS(truncate_samples({0.5, 1.3}, off), InsufficientSupport);
}

TEST_CASE("truncate commutes with discrete grouping") {
  const std::vector<double> samples{0, 1, 1, 2, 2, 2, 3, 5, 5, 7, 0, 1, 4};
  Region keep;
  keep.values = {0.0, 1.0, 2.0, 3.0};
  const auto a = truncate_table(from_samples(samples, Binning::discrete_identity()), keep);
  const auto b = from_samples(truncate_samples(samples, keep), Binning::discrete_identity());
  CHECK(a.support() == b.support());
  CHECK(a.counts() == b.counts());
}

TEST_CASE("auxiliary distribution") {
  const auto aux = auxiliary_of(ParametricModel::exponential(std::log(2.0)), {0.0, 1.0});
  REQUIRE(aux.size() == 2);
  CHECK(aux.probs[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(aux.probs[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

  const auto wide = auxiliary_of(ParametricModel::normal(0.0, 1.0), {-30.0, 0.0, 30.0});
  double sum = 0.0;
  for (double p : wide.probs) {
    CHECK(p > 0.0);
    sum += p;
  }
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(auxiliary_of(ParametricModel::normal(0.0, 1.0), {0.0, INFINITY}), DomainError);
  CHECK_THROWS_AS(auxiliary_of(ParametricModel::exponential(1.0), {-1.0, 1.0}), ZeroDensity);
  CHECK_THROWS_AS(auxiliary_of(ParametricModel::exponential(1.0), {1.0}), InsufficientSupport);
}

TEST_CASE("auxiliary round trips through an exact-ratio table") {
  const ParametricModel m = ParametricModel::poisson(2.4);
  const std::vector<double> support{0, 1, 2, 3, 4};
  const auto aux = auxiliary_of(m, support);
  std::vector<double> counts;
  for (double p : aux.probs) counts.push_back(p * 1e6);
  const FrequencyTable t(support, counts);
  const auto rel = t.relative_frequencies();
  for (std::size_t i = 0; i < rel.size(); ++i)
    CHECK(rel[i] == doctest::Approx(aux.probs[i]).epsilon(1e-12));
}

TEST_CASE("natural-form auxiliary matches the model auxiliary") {
  const ParametricModel m = ParametricModel::exponential(1.3);
  const std::vector<double> support{0.2, 0.9, 1.7};
  const auto a = auxiliary_of(m, support);
  const auto nf = natural_form(m);
  const auto b = auxiliary_of(nf, nf.theta, support);
  for (std::size_t i = 0; i < support.size(); ++i)
    CHECK(a.probs[i] == doctest::Approx(b.probs[i]).epsilon(1e-12));
}
