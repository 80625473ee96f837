#pragma once

// Extension of an expanding first branch f1 : [0,a] -> [0,1] to the unique
// Lebesgue-preserving full-branch map. Two independent routes:
//
//  * ode:       integrate f2'(x) = c/(c-1), c = f1'(f1^-1(f2(x))), f2(a) = 0
//               with classical RK4 on [a,1];
//  * transport: the measure identity f1^-1(y) + (f2^-1(y) - a) = y gives
//               f2^-1(y) = a + y - f1^-1(y) in closed form.

#include <cstddef>
#include <vector>

#include "lebmaps/branch.hpp"
#include "lebmaps/circle_map.hpp"

namespace lebmaps {

enum class ExtensionMethod { Ode, Transport };

inline constexpr double kDefaultOdeStep = 1e-4;
inline constexpr double kDefaultOdeTol = 1e-8;
inline constexpr double kClosurePinTol = 1e-6;
inline constexpr double kStateOvershootTol = 1e-10;
inline constexpr std::size_t kMaxResampledKnots = 512;

struct ExtensionResult {
  CircleMap map;
  /// |f2(1) - 1| before the final knot is pinned
  double closure_residual = 0.0;
  ExtensionMethod method = ExtensionMethod::Transport;
  /// integration steps (ode) or knots generated (transport)
  std::size_t steps_used = 0;
  /// half-step error estimate; zero for transport
  double error_estimate = 0.0;
};

/// Right-hand side of the extension ODE at state y: c/(c-1), c = f1'(f1^-1(y)).
/// y is clamped to [0,1].
double extension_slope(const BranchFunction& f1, double y);

/// a + y - f1^-1(y)
double transport_inverse(const BranchFunction& f1, double y);
/// f2(x) from the closed form, by inverting transport_inverse.
double transport_value(const BranchFunction& f1, double x);

struct OdeTrajectory {
  std::vector<double> x;
  std::vector<double> y;
  double step = 0.0;
};

/// Raw fixed-step RK4 trajectory on [a,1] (no clamping of states, no pinning).
OdeTrajectory integrate_extension_ode(const BranchFunction& f1, double step);

ExtensionResult extend_by_ode(const BranchFunction& f1, double step = kDefaultOdeStep,
                              double tol = kDefaultOdeTol);
ExtensionResult extend_by_transport(const BranchFunction& f1);

struct GluingCheck {
  bool ok = false;
  double residual = 0.0;
};

/// |f1'(0) - f1'(a)/(f1'(a)-1)| against tol.
GluingCheck check_gluing(const BranchFunction& f1, double tol = 1e-8);

/// max over interior points x of |1/N1'(N1^-1 x) + 1/N2'(N2^-1 x) - 1|.
double balance_defect(const CircleMap& m, std::size_t points = 1000);

/// sup over `grid` uniform points of the common domain of |b1 - b2|.
double branch_sup_difference(const BranchFunction& b1, const BranchFunction& b2, std::size_t grid = 1000);

}  // namespace lebmaps
