#pragma once

// Coordinates on the space of Lebesgue-preserving maps: an arc [x, y] of the
// circle together with an expanding profile mapping it onto [0,1] that
// satisfies the gluing condition. The extension of the profile is the map.

#include "lebmaps/branch.hpp"
#include "lebmaps/circle_map.hpp"
#include "lebmaps/extension.hpp"

namespace lebmaps {

inline constexpr double kGammaGluingTol = 1e-8;
inline constexpr double kGammaArcTol = 1e-9;

struct GammaElement {
  double x = 0.0;
  double y = 0.0;
  /// Profile in arc-local coordinates: domain [0, (y - x) mod 1], onto [0,1].
  BranchFunction profile;

  double arc_length() const noexcept { return profile.hi(); }
};

/// Throws NotInSpace unless (x, y) is off the diagonal, the profile domain
/// matches the arc, x mod 1 <= 1 - (y - x) mod 1 (so the arc holds the fixed
/// point of the map) and the profile is expanding with gluing residual within
/// kGammaGluingTol.
GammaElement make_gamma(double x, double y, BranchFunction profile);
void check_gamma(const GammaElement& g);

struct GammaOptions {
  bool cross_check = true;
  double ode_step = kDefaultOdeStep;
  double cross_check_tol = 1e-6;
};

/// The unique Lebesgue-preserving map whose branch arc [x, y] carries the
/// profile. Raises NoConvergence when the ode cross-check disagrees; the
/// cross-check halves its step (up to four times) when the state overshoots.
CircleMap gamma_to_map(const GammaElement& g, const GammaOptions& options = {});

/// The branch arc containing the fixed point and the map restricted to it.
/// NotInSpace if validate_map fails the tolerances.
GammaElement map_to_gamma(const CircleMap& m, const Tolerances& tol = {});

/// The profile affinely rescaled to [0, 1/2].
BranchFunction normalize_profile(const GammaElement& g);

}  // namespace lebmaps
