#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <vector>

#include "doctest.h"
#include "vdist/errors.hpp"
#include "vdist/metric.hpp"
#include "vdist/rng.hpp"

using namespace vdist;

TEST_CASE("distance reference values") {
  const FrequencyTable t({0.0, 1.0}, {2.0, 1.0});
  CHECK(dv_tables(t, t) == 0.0);

  // counts (2,1) against ratios 2 vs 4: |2-4| + |1/2-1/4| = 2.25
  const auto aux = auxiliary_of(ParametricModel::exponential(std::log(4.0)), {0.0, 1.0});
  CHECK(dv_tables(t, aux) == doctest::Approx(2.25).epsilon(1e-12));
  CHECK(dv_model(t, ParametricModel::exponential(std::log(4.0))) ==
        doctest::Approx(2.25).epsilon(1e-12));

  // exact ratio match -> zero
  const FrequencyTable e({0.0, 1.0}, {8.0, 4.0});
  CHECK(dv_model(e, ParametricModel::exponential(std::log(2.0))) <= 1e-12);
}

TEST_CASE("two-point expansion") {
  // dv equals |f(x)/f(y) - n1/n2| + |f(y)/f(x) - n2/n1|
  const double x = 0.3, y = 1.4, n1 = 700, n2 = 450;
  const ParametricModel m = ParametricModel::exponential(0.9);
  const double r = m.density(x) / m.density(y);
  const double expected = std::fabs(r - n1 / n2) + std::fabs(1.0 / r - n2 / n1);
  CHECK(dv_model(FrequencyTable({x, y}, {n1, n2}), m) ==
        doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("proposition 2: proportional but unequal tables") {
  const FrequencyTable a({0.0, 1.0}, {1.0, 2.0});
  const FrequencyTable b({0.0, 1.0}, {2.0, 4.0});
  CHECK(dv_tables(a, b) == 0.0);
  CHECK(a.counts() != b.counts());
}

TEST_CASE("metric properties on random tables") {
  Rng rng(505);
  auto random_counts = [&](std::size_t k) {
    std::vector<double> c(k);
    for (auto& v : c) v = 0.1 + 9.9 * rng.uniform01();
    return c;
  };
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t k = 3 + static_cast<std::size_t>(rng.next_u64() % 4);
    std::vector<double> support(k);
    for (std::size_t i = 0; i < k; ++i) support[i] = static_cast<double>(i);
    const FrequencyTable a(support, random_counts(k));
    const FrequencyTable b(support, random_counts(k));
    const FrequencyTable c(support, random_counts(k));

    CHECK(dv_tables(a, b) == dv_tables(b, a));  // symmetry, bitwise
    CHECK(dv_tables(a, c) <= dv_tables(a, b) + dv_tables(b, c) + 1e-9);

    // count-scale invariance, exact for a power-of-two factor
    std::vector<double> scaled = a.counts();
    for (auto& v : scaled) v *= 8.0;
    CHECK(dv_tables(FrequencyTable(support, scaled), b) == dv_tables(a, b));

    // within rounding for a generic factor
    std::vector<double> scaled3 = a.counts();
    for (auto& v : scaled3) v *= 3.0;
    CHECK(dv_tables(FrequencyTable(support, scaled3), b) ==
          doctest::Approx(dv_tables(a, b)).epsilon(1e-12));
  }
}

TEST_CASE("common reordering leaves the distance unchanged") {
  const FrequencyTable a({0.0, 1.0, 2.0}, {5.0, 3.0, 2.0});
  const FrequencyTable b({0.0, 1.0, 2.0}, {1.0, 7.0, 4.0});
  const FrequencyTable ap({2.0, 0.0, 1.0}, {2.0, 5.0, 3.0});
  const FrequencyTable bp({2.0, 0.0, 1.0}, {4.0, 1.0, 7.0});
  CHECK(dv_tables(ap, bp) == dv_tables(a, b));
}

TEST_CASE("distance error conditions") {
  const FrequencyTable a({0.0, 1.0}, {1.0, 2.0});
  const FrequencyTable other({0.0, 2.0}, {1.0, 2.0});
  CHECK_THROWS_AS(dv_tables(a, other), SupportMismatch);

  AuxiliaryTable zero;
  zero.support = {0.0, 1.0};
  zero.probs = {1.0, 0.0};
  CHECK_THROWS_AS(dv_tables(a, zero), ZeroDensity);

  // density vanishing on part of the support
  CHECK_THROWS_AS(dv_model(FrequencyTable({-1.0, 1.0}, {1.0, 2.0}),
                           ParametricModel::exponential(1.0)),
                  ZeroDensity);
}

TEST_CASE("pairwise terms sum to the distance") {
  const FrequencyTable t({0.0, 0.7, 1.9, 3.2}, {40.0, 25.0, 20.0, 15.0});
  const ParametricModel m = ParametricModel::exponential(0.8);
  const auto terms = dv_model_terms(t, m);
  CHECK(terms.size() == t.size() * (t.size() - 1));
  double sum = 0.0;
  for (const auto& d : terms) {
    CHECK(d.value >= 0.0);
    CHECK(d.i != d.j);
    sum += d.value;
  }
  CHECK(sum == doctest::Approx(dv_model(t, m)).epsilon(1e-12));
}

TEST_CASE("extreme support points do not overflow") {
  // raw density ratios would overflow ~1e300; the log-space path must not
  const FrequencyTable t({-38.0, 0.0, 38.0}, {1.0, 5.0, 1.0});
  const double d = dv_model(t, ParametricModel::normal(0.0, 1.0));
  CHECK(std::isfinite(d));
  CHECK(d > 0.0);
}

TEST_CASE("convexity witness") {
  const FrequencyTable t({0.0, 1.0, 2.0, 4.0}, {40.0, 30.0, 20.0, 10.0});
  const NaturalForm nf = natural_form(ParametricModel::poisson(2.0));

  auto w0 = convexity_witness(nf, t, {0.3}, {-1.1}, 0.0);
  CHECK(w0.lhs == doctest::Approx(w0.rhs).epsilon(1e-15));
  auto w1 = convexity_witness(nf, t, {0.3}, {-1.1}, 1.0);
  CHECK(w1.lhs == doctest::Approx(w1.rhs).epsilon(1e-15));

  Rng rng(99);
  for (int rep = 0; rep < 200; ++rep) {
    const std::vector<double> t1{-3.0 + 6.0 * rng.uniform01()};
    const std::vector<double> t2{-3.0 + 6.0 * rng.uniform01()};
    const double w = rng.uniform01();
    const auto wit = convexity_witness(nf, t, t1, t2, w);
    CHECK(wit.lhs <= wit.rhs + 1e-12);
  }

  // combination outside the natural domain
  const NaturalForm enf = natural_form(ParametricModel::exponential(1.0));
  CHECK_THROWS_AS(convexity_witness(enf, t, {-1.0}, {0.5}, 0.5), DomainError);
  CHECK_THROWS_AS(convexity_witness(nf, t, {0.3}, {-1.1}, 1.5), DomainError);
}
