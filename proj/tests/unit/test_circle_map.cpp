#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "lebmaps/circle_map.hpp"
#include "lebmaps/error.hpp"
#include "lebmaps/extension.hpp"
#include "lebmaps/homotopy.hpp"
#include "lebmaps/parametrization.hpp"
#include "support/corpus.hpp"
#include "support/oracles.hpp"

using namespace lebmaps;

TEST_CASE("wrap and circle distance") {
  CHECK(wrap01(1.25) == doctest::Approx(0.25));
  CHECK(wrap01(-0.25) == doctest::Approx(0.75));
  CHECK(wrap01(1.0) == 0.0);
  CHECK(circle_distance(0.05, 0.95) == doctest::Approx(0.1));
  CHECK(circle_distance(0.3, 0.3) == 0.0);
}

TEST_CASE("branch domains must tile the circle") {
  const std::vector<Knot> k1 = {{0.0, 0.0, 2.0}, {0.5, 1.0, 2.0}};
  const std::vector<Knot> k2 = {{0.6, 0.0, 2.5}, {1.0, 1.0, 2.5}};
  try {
    CircleMap m(build_branch(k1), build_branch(k2));
    FAIL("accepted a gap between the branches");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotFullBranch);
  }
}

TEST_CASE("partial branch values are reported, not rejected") {
  const std::vector<Knot> k1 = {{0.0, 0.0, 2.0}, {0.5, 0.9, 2.0}};
  const std::vector<Knot> k2 = {{0.5, 0.0, 2.0}, {1.0, 1.0, 2.0}};
  const ValidationReport r = validate_map(CircleMap(build_branch(k1), build_branch(k2)));
  CHECK_FALSE(r.is_full_branch);
  CHECK(r.closure_residual == doctest::Approx(0.1));
  CHECK_FALSE(r.in_space());
}

TEST_CASE("doubling map") {
  const CircleMap d = doubling_map();
  CHECK(d.branch_point() == 0.5);
  CHECK(find_fixed_point(d) == doctest::Approx(0.0));
  CHECK(d.value(0.3) == doctest::Approx(0.6));
  CHECK(d.value(0.8) == doctest::Approx(0.6));
  CHECK(d.derivative(0.8) == doctest::Approx(2.0));
  const ValidationReport r = validate_map(d);
  CHECK(r.in_space());
  CHECK(r.min_derivative == doctest::Approx(2.0));
  CHECK(r.preservation_residual <= 1e-15);
  CHECK(r.gluing_residual <= 1e-15);
  CHECK(c1_distance(d, d) == 0.0);
  const auto [x, y] = branch_points(d);
  CHECK(x == doctest::Approx(0.0));
  CHECK(y == doctest::Approx(0.5));
}

TEST_CASE("rotated doubling has fixed point t") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const double t = u(rng);
    const CircleMap m = doubling_map(t);
    CHECK(circle_distance(find_fixed_point(m), t) <= 1e-12);
    const double x = u(rng);
    CHECK(circle_distance(m.value(x), oracle::wrap(2.0 * x - t)) <= 1e-12);
  }
}

TEST_CASE("branch points of x -> 2x - 1/4") {
  const auto [x, y] = branch_points(doubling_map(0.25));
  CHECK(x == doctest::Approx(0.125));
  CHECK(y == doctest::Approx(0.625));
}

TEST_CASE("piecewise linear map preserves Lebesgue but is not C1") {
  const CircleMap m = piecewise_linear_map(0.3);
  const ValidationReport r = validate_map(m);
  CHECK(r.preserves_lebesgue());
  CHECK(r.gluing_residual == doctest::Approx(10.0 / 3.0 - 10.0 / 7.0).epsilon(1e-12));
  CHECK_FALSE(r.is_c1());
  CHECK_FALSE(r.in_space());
  CHECK(circle_derivative_mismatch(m) == doctest::Approx(10.0 / 3.0 - 10.0 / 7.0).epsilon(1e-12));
}

TEST_CASE("control map fails preservation by the oracle amount") {
  const ValidationReport r = validate_map(corpus::control_map());
  const auto f = [](double x) { return 2.0 * x + 0.05 * std::sin(2.0 * std::numbers::pi * x); };
  const auto g = [&](double x) { return f(x) - 1.0; };
  double sup = 0.0;
  for (int i = 0; i <= 1000; ++i) {
    const double y = i / 1000.0;
    sup = std::max(sup, std::abs(oracle::preimage_measure(f, g, 0.5, y) - y));
  }
  CHECK(r.is_expanding);
  CHECK(r.preservation_residual == doctest::Approx(sup).epsilon(1e-4));
  CHECK_FALSE(r.in_space());
}

TEST_CASE("c1 distance against a dense brute-force scan") {
  const CircleMap d = doubling_map();
  const CircleMap c = gamma_to_map(make_gamma(0.0, 0.5, canonical_branch({0.5, 2.2})));
  double sv = 0.0, sd = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double x = i / 100000.0;
    sv = std::max(sv, circle_distance(d.value(x), c.value(x)));
    sd = std::max(sd, std::abs(d.derivative(x) - c.derivative(x)));
  }
  const double dist = c1_distance(d, c);
  CHECK(dist > 0.0);
  CHECK(dist == doctest::Approx(sv + sd).epsilon(1e-3));
}

TEST_CASE("normalized extended map fixes zero") {
  for (const auto& e : corpus::extension_corpus()) {
    CAPTURE(e.name);
    const CircleMap m = extend_by_transport(e.f1).map;
    CHECK(std::abs(find_fixed_point(m)) <= 1e-12);
  }
}
