#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "lebmaps/branch.hpp"
#include "lebmaps/error.hpp"
#include "lebmaps/kernels.hpp"
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

BranchFunction three_knot() {
  const std::vector<Knot> k = {{0.0, 0.0, 2.2}, {0.25, 0.5, 2.0}, {0.5, 1.0, 2.2}};
  return build_branch(k);
}

}  // namespace

TEST_CASE("two knots with matching slopes give the line") {
  const std::vector<Knot> k = {{0.0, 0.0, 2.0}, {0.5, 1.0, 2.0}};
  const BranchFunction b = build_branch(k);
  for (double x : {0.0, 0.1, 0.3, 0.42, 0.5}) {
    CHECK(eval_branch(b, x) == doctest::Approx(2.0 * x).epsilon(1e-15));
    CHECK(eval_derivative(b, x) == doctest::Approx(2.0).epsilon(1e-14));
  }
  CHECK(eval_branch(b, 0.3) == doctest::Approx(0.6));
  CHECK(invert_branch(b, 0.7) == doctest::Approx(0.35).epsilon(1e-14));
  CHECK(invert_branch(b, 1.0) == 0.5);
  CHECK(b.min_derivative() == doctest::Approx(2.0));
}

TEST_CASE("three knot branch matches hand evaluation") {
  const BranchFunction b = three_knot();
  CHECK(eval_derivative(b, 0.25) == 2.0);
  CHECK(eval_branch(b, 0.25) == 0.5);
  CHECK(invert_branch(b, 0.5) == doctest::Approx(0.25).epsilon(1e-15));
  // midpoint of [0, 1/4]: (y0+y1)/2 + h (d0-d1)/8 and 3 s/2 - (d0+d1)/4
  CHECK(eval_branch(b, 0.125) == doctest::Approx(0.25 + 0.25 * 0.2 / 8.0).epsilon(1e-14));
  CHECK(eval_derivative(b, 0.125) == doctest::Approx(1.5 * 2.0 - 4.2 / 4.0).epsilon(1e-14));
  // vertex of the derivative at t = 2/3 of the first piece
  CHECK(b.min_derivative() == doctest::Approx(29.0 / 15.0).epsilon(1e-12));
}

TEST_CASE("values at knots are exact") {
  const BranchFunction b = corpus::sin_branch(0.5, 0.05, 32);
  for (std::size_t i = 0; i < b.size(); ++i) {
    CHECK(eval_branch(b, b.xs()[i]) == b.ys()[i]);
    CHECK(eval_derivative(b, b.xs()[i]) == doctest::Approx(b.dys()[i]).epsilon(1e-13));
  }
}

TEST_CASE("partial branch is accepted") {
  const std::vector<Knot> k = {{0.0, 0.0, 2.0}, {0.5, 0.9, 2.0}};
  CHECK_NOTHROW(build_branch(k));
}

TEST_CASE("invalid knots are rejected") {
  CHECK(code_of([] { build_branch(std::vector<Knot>{{0.0, 0.0, 2.0}}); }) == ErrorCode::NonMonotoneInput);
  CHECK(code_of([] { build_branch(std::vector<Knot>{{0.0, 0.0, 2.0}, {0.0, 1.0, 2.0}}); }) ==
        ErrorCode::NonMonotoneInput);
  CHECK(code_of([] { build_branch(std::vector<Knot>{{0.0, 0.5, 2.0}, {0.5, 0.5, 2.0}}); }) ==
        ErrorCode::NonMonotoneInput);
  CHECK(code_of([] { build_branch(std::vector<Knot>{{0.0, 0.0, 1.0005}, {0.5, 1.0, 2.0}}); }) ==
        ErrorCode::NotExpanding);
  // knot slopes fine, cubic dips below 1 in between
  CHECK(code_of([] { build_branch(std::vector<Knot>{{0.0, 0.0, 6.0}, {1.0, 1.2, 6.0}}); }) ==
        ErrorCode::InterpolantViolation);
}

TEST_CASE("evaluation outside the domain raises") {
  const BranchFunction b = three_knot();
  CHECK(code_of([&] { eval_branch(b, 0.6); }) == ErrorCode::OutOfDomain);
  CHECK(code_of([&] { eval_derivative(b, -0.1); }) == ErrorCode::OutOfDomain);
  CHECK(code_of([&] { invert_branch(b, 1.2); }) == ErrorCode::OutOfRange);
}

TEST_CASE("inverse agrees with bisection") {
  const BranchFunction b = corpus::sin_branch(0.4, 0.1);
  const auto f = [&](double x) { return eval_branch(b, x); };
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const double y = u(rng);
    CHECK(invert_branch(b, y) == doctest::Approx(oracle::bisect(f, y, 0.0, 0.4)).epsilon(1e-12));
  }
}

TEST_CASE("min_derivative matches a dense scan") {
  const BranchFunction b = corpus::sin_branch(0.5, 0.1, 16);
  double scan = 1e300;
  for (int i = 0; i <= 200000; ++i) scan = std::min(scan, eval_derivative(b, 0.5 * i / 200000.0));
  CHECK(b.min_derivative() <= scan + 1e-12);
  CHECK(b.min_derivative() == doctest::Approx(scan).epsilon(1e-9));
}

TEST_CASE("hermite_min_slope") {
  CHECK(hermite_min_slope(2.0, 2.0, 2.0) == doctest::Approx(2.0));
  // convex derivative with vertex at t = 0
  CHECK(hermite_min_slope(2.0, 1.5, 3.0) == doctest::Approx(1.5));
  // equal end slopes d: derivative d + 6 (s - d) t (1 - t), minimum at t = 1/2
  CHECK(hermite_min_slope(1.2, 6.0, 6.0) == doctest::Approx(6.0 + 1.5 * (1.2 - 6.0)).epsilon(1e-12));
}

TEST_CASE("batch sampling matches pointwise evaluation on every backend") {
  const BranchFunction b = corpus::sin_branch(0.5, 0.05, 64);
  std::vector<double> x(777), v(777), d(777);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = 0.5 * i / (x.size() - 1);
  const auto before = kernels::active_backend();
  for (auto be : {kernels::Backend::Scalar, kernels::Backend::Avx2}) {
    if (!kernels::set_backend(be)) continue;
    CAPTURE(kernels::to_string(be));
    b.sample(x, v, d);
    for (std::size_t i = 0; i < x.size(); ++i) {
      CHECK(v[i] == doctest::Approx(eval_branch(b, x[i])).epsilon(1e-14));
      CHECK(d[i] == doctest::Approx(eval_derivative(b, x[i])).epsilon(1e-13));
    }
  }
  kernels::set_backend(before);
}
