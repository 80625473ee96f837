#pragma once

// Paths in the space of Lebesgue-preserving maps: from any map to the
// doubling map through the canonical branch family, and the loop of rotation
// conjugates of the doubling map that generates the fundamental group.

#include <cstddef>
#include <string_view>
#include <utility>
#include <vector>

#include "lebmaps/branch.hpp"
#include "lebmaps/circle_map.hpp"

namespace lebmaps {

inline constexpr double kEndpointMatchTol = 1e-8;
inline constexpr double kPathPreservationTol = 1e-5;
inline constexpr double kPathEndpointTol = 1e-9;
inline constexpr std::size_t kDefaultPathSteps = 64;
inline constexpr std::size_t kMinLoopSteps = 8;

/// Branch point a and endpoint slope c of the canonical branch whose
/// derivative is the quadratic Bernstein profile with control values
/// c, m, c/(c-1), m = 3/a - c - c/(c-1).
struct CanonicalParams {
  double a = 0.5;
  double c = 2.0;

  friend bool operator==(const CanonicalParams&, const CanonicalParams&) = default;
};

double canonical_middle(const CanonicalParams& p) noexcept;
bool canonical_valid(const CanonicalParams& p) noexcept;
/// Open interval of valid c for branch point a; empty (lo >= hi) for a >= 0.6.
std::pair<double, double> canonical_slope_range(double a) noexcept;
double canonical_derivative(const CanonicalParams& p, double u) noexcept;

/// OutsideValidity if c <= 1 or m <= 1.
BranchFunction canonical_branch(const CanonicalParams& p, double margin = kDefaultMargin);

/// (1-t) b0 + t b1; EndpointMismatch unless both share the domain and the
/// endpoint slopes agree within kEndpointMatchTol.
BranchFunction linear_branch_leg(const BranchFunction& b0, const BranchFunction& b1, double t);

/// canonical_branch((1-t) p0 + t p1); PathLeavesValidity if that point is
/// outside the family.
BranchFunction slide_leg(const CanonicalParams& p0, const CanonicalParams& p1, double t);

/// r_{-theta} o m o r_{theta} in the lifted convention x -> m(x - theta) + theta.
CircleMap rotate_conjugate(const CircleMap& m, double theta);

enum class LegKind { Rotate, ToCanonical, Slide, ToTarget };
std::string_view to_string(LegKind kind) noexcept;

struct PathLeg {
  LegKind kind = LegKind::Rotate;
  double t0 = 0.0;
  double t1 = 0.0;
  bool degenerate = true;
};

struct HomotopyPath {
  std::vector<double> times;
  std::vector<CircleMap> samples;
  std::vector<ValidationReport> reports;
  std::vector<PathLeg> legs;

  std::size_t size() const noexcept { return samples.size(); }
  /// max over k of c1_distance(samples[k], samples[k+1])
  double max_step(std::size_t grid = 4096) const;
  /// every sample in the space with preservation tolerance `preservation`
  bool all_valid(double preservation = kPathPreservationTol) const noexcept;
};

/// K+1 samples from g to the doubling map. A path whose legs are all
/// degenerate has the single sample g. NotInSpace for invalid g,
/// PathLeavesValidity if the canonical family cannot be traversed.
HomotopyPath build_path(const CircleMap& g, std::size_t steps = kDefaultPathSteps);

/// Loop t -> r_{-t} o doubling o r_t sampled at t = k/K; OutOfDomain if K < 8.
HomotopyPath generator_loop(std::size_t steps = kDefaultPathSteps);

/// p then q; the junction sample is kept once when the endpoints coincide.
HomotopyPath concatenate(const HomotopyPath& p, const HomotopyPath& q);

/// Net number of turns made by the pair of branch points along a closed
/// path. NotClosed if the endpoints differ; SamplingTooCoarse if a branch
/// point moves by a quarter turn or more between samples.
long winding_number(const HomotopyPath& path);

/// Net turns of the fixed point, an independent witness of the same class.
long fixed_point_winding(const HomotopyPath& path);

}  // namespace lebmaps
