#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "vdist/errors.hpp"
#include "vdist/optimize.hpp"

using namespace vdist;

TEST_CASE("scalar minimization") {
  auto kink = [](double x) { return std::fabs(x - 3.0); };
  const auto r1 = minimize_scalar(kink, 0.0, 10.0, 1e-10);
  CHECK(std::fabs(r1.x - 3.0) < 1e-9);
  CHECK_FALSE(r1.at_boundary);

  auto bowl = [](double x) { return (x - 2.0) * (x - 2.0); };
  const auto r2 = minimize_scalar(bowl, -5.0, 5.0, 1e-10);
  CHECK(std::fabs(r2.x - 2.0) < 1e-7);

  // log-spaced grid localizes minima far below the linear resolution
  auto logbowl = [](double x) {
    const double d = std::log(x) - std::log(1e-4);
    return d * d;
  };
  const auto r3 = minimize_scalar(logbowl, 1e-6, 1e6, 1e-10);
  CHECK(std::fabs(r3.x - 1e-4) / 1e-4 < 1e-5);
}

TEST_CASE("boundary detection") {
  auto rising = [](double x) { return x; };
  const auto r = minimize_scalar(rising, 1.0, 5.0, 1e-10);
  CHECK(r.at_boundary);
  CHECK(r.x == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("scalar input validation") {
  auto f = [](double x) { return x * x; };
  CHECK_THROWS_AS(minimize_scalar(f, 1.0, 1.0, 1e-10), DomainError);
  CHECK_THROWS_AS(minimize_scalar(f, 0.0, 1.0, 0.0), DomainError);
  CHECK_THROWS_AS(minimize_scalar(f, 0.0, INFINITY, 1e-10), DomainError);
}

TEST_CASE("box minimization") {
  auto f2 = [](const std::vector<double>& v) {
    return std::fabs(v[0] - 1.0) + (v[1] + 2.0) * (v[1] + 2.0);
  };
  const auto r = minimize_box(f2, {{-10.0, 10.0}, {-10.0, 10.0}}, {}, 1e-10);
  CHECK(std::fabs(r.x[0] - 1.0) < 1e-6);
  CHECK(std::fabs(r.x[1] + 2.0) < 1e-5);
  CHECK_FALSE(r.at_boundary);

  // a caller-provided start near the optimum is honored
  auto f1 = [](const std::vector<double>& v) { return std::fabs(v[0] - 123.456); };
  const auto r1 = minimize_box(f1, {{1e-6, 1e6}}, {{123.0}}, 1e-10);
  CHECK(std::fabs(r1.x[0] - 123.456) < 1e-6);

  CHECK_THROWS_AS(minimize_box(f1, {}, {}, 1e-10), DomainError);
  CHECK_THROWS_AS(
      minimize_box([](const std::vector<double>&) { return 0.0; },
                   {{0.0, 1.0}, {0.0, 1.0}, {0.0, 1.0}}, {}, 1e-10),
      DomainError);
}

TEST_CASE("box boundary detection") {
  auto f = [](const std::vector<double>& v) { return v[0] + v[1]; };
  const auto r = minimize_box(f, {{0.0, 1.0}, {0.0, 1.0}}, {}, 1e-10);
  CHECK(r.at_boundary);
}
