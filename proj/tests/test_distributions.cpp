#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "vdist/distributions.hpp"
#include "vdist/errors.hpp"

using namespace vdist;

TEST_CASE("density reference values") {
  CHECK(ParametricModel::exponential(1.0).density(0.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(ParametricModel::normal(0.0, 1.0).density(0.0) ==
        doctest::Approx(0.3989422804).epsilon(1e-9));
  CHECK(ParametricModel::binomial(8, 0.1).density(9.0) == 0.0);
  CHECK(ParametricModel::binomial(8, 0.1).density(3.5) == 0.0);
  CHECK(ParametricModel::exponential(2.0).density(-0.5) == 0.0);
  CHECK(ParametricModel::poisson(3.0).density(2.0) ==
        doctest::Approx(4.5 * std::exp(-3.0)).epsilon(1e-12));
  CHECK(ParametricModel::weibull(1.0, 2.0).density(1.0) ==
        doctest::Approx(0.5 * std::exp(-0.5)).epsilon(1e-12));
  CHECK(ParametricModel::gamma(1.0, 1.5).density(2.0) ==
        doctest::Approx(1.5 * std::exp(-3.0)).epsilon(1e-12));
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(ParametricModel::exponential(0.0), ConstraintViolation);
  CHECK_THROWS_AS(ParametricModel::exponential(-1.0), ConstraintViolation);
  CHECK_THROWS_AS(ParametricModel::normal(0.0, 0.0), ConstraintViolation);
  CHECK_THROWS_AS(ParametricModel::binomial(8, 0.0), ConstraintViolation);
  CHECK_THROWS_AS(ParametricModel::binomial(8, 1.0), ConstraintViolation);
  CHECK_THROWS_AS(ParametricModel::binomial(0, 0.5), ConstraintViolation);
  CHECK_THROWS_AS(ParametricModel(Family::Binomial, {8.5, 0.5}), ConstraintViolation);
  CHECK_THROWS_AS(ParametricModel::poisson(-2.0), ConstraintViolation);
  CHECK_THROWS_AS(ParametricModel::weibull(0.0, 1.0), ConstraintViolation);
  CHECK_THROWS_AS(ParametricModel::gamma(1.0, -1.0), ConstraintViolation);
  CHECK_THROWS_AS(ParametricModel(Family::Normal, {0.0}), ConstraintViolation);
}

TEST_CASE("density integrates to one") {
  // Simpson's rule on a wide window, independent of the cdf implementation.
  auto integral = [](const ParametricModel& m, double lo, double hi, int n) {
    const double h = (hi - lo) / n;
    double s = m.density(lo) + m.density(hi);
    for (int i = 1; i < n; ++i) s += m.density(lo + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
  };
  CHECK(integral(ParametricModel::exponential(1.3), 0.0, 40.0, 4000) ==
        doctest::Approx(1.0).epsilon(1e-6));
  CHECK(integral(ParametricModel::normal(0.4, 1.2), -15.0, 15.0, 4000) ==
        doctest::Approx(1.0).epsilon(1e-6));
  CHECK(integral(ParametricModel::weibull(1.2, 1.5), 1e-9, 30.0, 6000) ==
        doctest::Approx(1.0).epsilon(1e-6));
  CHECK(integral(ParametricModel::gamma(2.0, 0.5), 1e-9, 80.0, 8000) ==
        doctest::Approx(1.0).epsilon(1e-6));

  double pois = 0.0;
  for (int k = 0; k <= 60; ++k) pois += ParametricModel::poisson(4.2).density(k);
  CHECK(pois == doctest::Approx(1.0).epsilon(1e-12));
  double bino = 0.0;
  for (int k = 0; k <= 8; ++k) bino += ParametricModel::binomial(8, 0.1).density(k);
  CHECK(bino == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("cdf is monotone and reaches one") {
  const std::vector<ParametricModel> models{
      ParametricModel::exponential(0.7), ParametricModel::normal(-0.3, 2.0),
      ParametricModel::weibull(1.4, 2.2), ParametricModel::gamma(2.5, 1.1),
      ParametricModel::poisson(3.0),     ParametricModel::binomial(10, 0.3)};
  for (const auto& m : models) {
    double prev = -1.0;
    for (double x = -5.0; x <= 60.0; x += 0.25) {
      const double c = m.cdf(x);
      CHECK(c >= prev - 1e-15);
      CHECK(c >= 0.0);
      CHECK(c <= 1.0 + 1e-12);
      prev = c;
    }
    CHECK(m.cdf(1e6) == doctest::Approx(1.0).epsilon(1e-9));
  }
  CHECK(ParametricModel::binomial(10, 0.3).cdf(10.0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("cdf agrees with density cross-checks") {
  CHECK(ParametricModel::exponential(2.0).cdf(1.0) ==
        doctest::Approx(1.0 - std::exp(-2.0)).epsilon(1e-12));
  CHECK(ParametricModel::normal(0.0, 1.0).cdf(0.0) == doctest::Approx(0.5).epsilon(1e-12));
  // Poisson cdf at k equals the pmf partial sum
  double s = 0.0;
  for (int k = 0; k <= 4; ++k) s += ParametricModel::poisson(2.5).density(k);
  CHECK(ParametricModel::poisson(2.5).cdf(4.0) == doctest::Approx(s).epsilon(1e-10));
  CHECK(ParametricModel::poisson(2.5).cdf(4.7) == doctest::Approx(s).epsilon(1e-10));
}

TEST_CASE("sampling is deterministic and in-support") {
  const ParametricModel m = ParametricModel::binomial(8, 0.1);
  const auto a = m.sample(1000, 77);
  const auto b = m.sample(1000, 77);
  CHECK(a == b);
  const auto c = m.sample(1000, 78);
  CHECK(a != c);
  for (double v : a) {
    CHECK(v >= 0.0);
    CHECK(v <= 8.0);
    CHECK(v == std::floor(v));
  }
  CHECK_THROWS_AS(m.sample(0, 1), ConstraintViolation);
}

TEST_CASE("sample means match theory within five standard errors") {
  {
    const auto draws = ParametricModel::exponential(2.0).sample(1000000, 2024);
    const double mean = std::accumulate(draws.begin(), draws.end(), 0.0) / draws.size();
    CHECK(std::fabs(mean - 0.5) < 5.0 * 0.5 / 1000.0);
  }
  {
    const auto draws = ParametricModel::normal(1.5, 2.0).sample(200000, 9);
    const double mean = std::accumulate(draws.begin(), draws.end(), 0.0) / draws.size();
    CHECK(std::fabs(mean - 1.5) < 5.0 * 2.0 / std::sqrt(200000.0));
  }
  {
    const auto draws = ParametricModel::weibull(1.2, 1.5).sample(200000, 31);
    const double mean = std::accumulate(draws.begin(), draws.end(), 0.0) / draws.size();
    const double mu = 1.5 * std::tgamma(1.0 + 1.0 / 1.2);
    CHECK(std::fabs(mean - mu) < 0.02);
  }
  {
    const auto draws = ParametricModel::gamma(2.0, 0.5).sample(200000, 55);
    const double mean = std::accumulate(draws.begin(), draws.end(), 0.0) / draws.size();
    CHECK(std::fabs(mean - 4.0) < 5.0 * std::sqrt(8.0) / std::sqrt(200000.0));
  }
  {
    const auto draws = ParametricModel::poisson(6.0).sample(200000, 4);
    const double mean = std::accumulate(draws.begin(), draws.end(), 0.0) / draws.size();
    CHECK(std::fabs(mean - 6.0) < 5.0 * std::sqrt(6.0) / std::sqrt(200000.0));
  }
}

TEST_CASE("natural forms reconstruct the density") {
  // relative 1e-10 agreement between the reconstruction and log_density
  auto check_model = [](const ParametricModel& m, const NaturalForm& nf,
                        const std::vector<double>& xs) {
    REQUIRE(nf.dim == static_cast<int>(nf.theta.size()));
    CHECK(nf.contains(nf.theta));
    for (double x : xs)
      CHECK(nf.log_density(x, nf.theta) == doctest::Approx(m.log_density(x)).epsilon(1e-10));
  };
  {
    const ParametricModel m = ParametricModel::poisson(2.7);
    std::vector<double> xs;
    for (int x = 0; x <= 20; ++x) xs.push_back(x);
    check_model(m, natural_form(m), xs);
    CHECK(natural_form(m).theta[0] == doctest::Approx(std::log(2.7)).epsilon(1e-12));
  }
  {
    const ParametricModel m = ParametricModel::exponential(1.8);
    const NaturalForm nf = natural_form(m);
    check_model(m, nf, {0.1, 0.5, 1.0, 3.0, 8.0});
    CHECK(nf.theta[0] == doctest::Approx(-1.8).epsilon(1e-12));
    CHECK(nf.contains({-0.5}));
    CHECK_FALSE(nf.contains({0.5}));
  }
  {
    const ParametricModel m = ParametricModel::normal(0.6, 1.3);
    const NaturalForm nf = natural_form(m);
    check_model(m, nf, {-2.0, -0.3, 0.6, 1.9});
    const double s2 = 1.3 * 1.3;
    CHECK(nf.theta[0] == doctest::Approx(0.6 / s2).epsilon(1e-12));
    CHECK(nf.theta[1] == doctest::Approx(-0.5 / s2).epsilon(1e-12));
  }
  {
    const ParametricModel m = ParametricModel::normal(0.6, 1.3);
    const NaturalForm nf = normal_mean_natural_form(m);
    REQUIRE(nf.dim == 1);
    check_model(m, nf, {-2.0, -0.3, 0.6, 1.9});
  }
  {
    const ParametricModel m = ParametricModel::binomial(8, 0.1);
    std::vector<double> xs;
    for (int x = 0; x <= 8; ++x) xs.push_back(x);
    check_model(m, natural_form(m), xs);
  }
  {
    const ParametricModel m = ParametricModel::gamma(2.4, 1.1);
    check_model(m, natural_form(m), {0.2, 0.9, 2.5, 6.0});
  }
  CHECK_THROWS_AS(natural_form(ParametricModel::weibull(1.2, 1.5)), UnsupportedFamily);
}

TEST_CASE("family names round trip") {
  for (Family f : {Family::Exponential, Family::Normal, Family::Poisson, Family::Binomial,
                   Family::Weibull, Family::Gamma}) {
    const auto back = family_from_name(family_name(f));
    REQUIRE(back.has_value());
    CHECK(*back == f);
  }
  CHECK_FALSE(family_from_name("cauchy").has_value());
}

TEST_CASE("region probability") {
  const ParametricModel e = ParametricModel::exponential(1.0);
  Region r;
  r.intervals = {{0.0, 1.0}};
  CHECK(e.region_probability(r) == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-12));
  CHECK(e.region_probability(Region::all()) == doctest::Approx(1.0).epsilon(1e-12));

  const ParametricModel b = ParametricModel::binomial(8, 0.1);
  Region keep;
  keep.values = {0.0, 1.0, 2.0, 3.0};
  double s = 0.0;
  for (int k = 0; k <= 3; ++k) s += b.density(k);
  CHECK(b.region_probability(keep) == doctest::Approx(s).epsilon(1e-12));

  // half-open interval semantics on a discrete family
  Region half;
  half.intervals = {{0.0, 3.0}};
  double s2 = 0.0;
  for (int k = 0; k <= 2; ++k) s2 += b.density(k);
  CHECK(b.region_probability(half) == doctest::Approx(s2).epsilon(1e-12));
}
