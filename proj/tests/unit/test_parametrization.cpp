#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "lebmaps/error.hpp"
#include "lebmaps/homotopy.hpp"
#include "lebmaps/parametrization.hpp"
#include "support/corpus.hpp"
#include "support/oracles.hpp"

using namespace lebmaps;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::ParseError;
}

double sup_against(const CircleMap& m, const oracle::Fn& exact) {
  double worst = 0.0;
  for (int i = 0; i < 2000; ++i) {
    const double x = (i + 0.37) / 2000.0;
    worst = std::max(worst, circle_distance(m.value(x), exact(x)));
  }
  return worst;
}

}  // namespace

TEST_CASE("doubling element gives the doubling map") {
  const CircleMap m = gamma_to_map(make_gamma(0.0, 0.5, corpus::constant_slope(2.0)));
  CHECK(c1_distance(m, doubling_map()) <= 1e-12);
}

TEST_CASE("shifted arc gives x -> 2x - 1/2") {
  const CircleMap m = gamma_to_map(make_gamma(0.25, 0.75, corpus::constant_slope(2.0)));
  CHECK(sup_against(m, [](double x) { return oracle::wrap(2.0 * x - 0.5); }) <= 1e-12);
  CHECK(find_fixed_point(m) == doctest::Approx(0.5));
}

TEST_CASE("elements outside the space are rejected") {
  CHECK(code_of([] { make_gamma(0.0, 1.0 / 3.0, corpus::constant_slope(3.0)); }) == ErrorCode::NotInSpace);
  CHECK(code_of([] { make_gamma(0.3, 0.3, corpus::constant_slope(2.0)); }) == ErrorCode::NotInSpace);
  CHECK(code_of([] { make_gamma(0.0, 0.4, corpus::constant_slope(2.0)); }) == ErrorCode::NotInSpace);
  CHECK(code_of([] { map_to_gamma(piecewise_linear_map(0.3)); }) == ErrorCode::NotInSpace);
  CHECK(code_of([] { map_to_gamma(corpus::control_map()); }) == ErrorCode::NotInSpace);
}

TEST_CASE("the arc must be able to hold the fixed point") {
  // profile 2u on [0.8, 1.3] is x -> 2x - 0.6 with fixed point 0.6 outside the arc
  CHECK(code_of([] { make_gamma(0.8, 0.3, corpus::constant_slope(2.0)); }) == ErrorCode::NotInSpace);
  const GammaElement g = make_gamma(0.3, 0.8, canonical_branch({0.5, 2.5}));
  const CircleMap m = gamma_to_map(g);
  CHECK(validate_map(m).in_space());
  const double fp = find_fixed_point(m);
  CHECK(fp > 0.3);
  CHECK(fp < 0.8);
  const GammaElement back = map_to_gamma(m);
  CHECK(circle_distance(back.x, 0.3) <= 1e-9);
  CHECK(circle_distance(back.y, 0.8) <= 1e-9);
}

TEST_CASE("map_to_gamma on doubling and its rotation") {
  const GammaElement d = map_to_gamma(doubling_map());
  CHECK(d.x == doctest::Approx(0.0));
  CHECK(d.y == doctest::Approx(0.5));
  CHECK(d.profile.value(0.2) == doctest::Approx(0.4));
  const GammaElement r = map_to_gamma(doubling_map(0.25));
  CHECK(r.x == doctest::Approx(0.125));
  CHECK(r.y == doctest::Approx(0.625));
  CHECK(r.profile.derivative(0.3) == doctest::Approx(2.0));
}

TEST_CASE("round trip on random elements") {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 10; ++i) {
    const GammaElement g = corpus::random_gamma(rng);
    CAPTURE(g.x);
    CAPTURE(g.y);
    const CircleMap m = gamma_to_map(g);
    const ValidationReport rep = validate_map(m);
    CHECK(rep.in_space());
    const double fp = find_fixed_point(m);
    CHECK(circle_distance(fp, g.x) + circle_distance(fp, g.y) <= g.arc_length() + 1e-12);
    const GammaElement back = map_to_gamma(m);
    CHECK(circle_distance(back.x, g.x) <= 1e-9);
    CHECK(circle_distance(back.y, g.y) <= 1e-9);
    CHECK(c1_distance(gamma_to_map(back), m) <= 1e-7);
  }
}

TEST_CASE("normalize_profile") {
  const BranchFunction d = normalize_profile(make_gamma(0.0, 0.5, corpus::constant_slope(2.0)));
  CHECK(d.hi() == 0.5);
  CHECK(d.value(0.3) == doctest::Approx(0.6));
  // not a valid element, but the rescaling is still defined
  const GammaElement third{0.0, 1.0 / 3.0, corpus::constant_slope(3.0)};
  const BranchFunction n = normalize_profile(third);
  CHECK(n.hi() == 0.5);
  CHECK(n.derivative(0.1) == doctest::Approx(2.0));
  CHECK(n.value(0.5) == 1.0);
  const GammaElement bump = make_gamma(0.1, 0.5, corpus::perturbed_canonical(0.4, 2.5, 0.02, 2));
  const BranchFunction w = normalize_profile(bump);
  for (double u : {0.05, 0.25, 0.45}) {
    CHECK(w.value(u) == doctest::Approx(bump.profile.value(0.8 * u)).epsilon(1e-13));
    CHECK(w.derivative(u) == doctest::Approx(bump.profile.derivative(0.8 * u) * 0.8).epsilon(1e-12));
  }
}
