#pragma once

// Test inputs: the extension corpus of first branches, the control maps and
// a seeded generator of arc elements.

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "lebmaps/branch.hpp"
#include "lebmaps/circle_map.hpp"
#include "lebmaps/homotopy.hpp"
#include "lebmaps/parametrization.hpp"

namespace corpus {

struct Entry {
  std::string name;
  lebmaps::BranchFunction f1;
  /// closed form of f1, used by the oracles
  std::function<double(double)> exact;
};

/// u -> s u on [0, 1/s].
lebmaps::BranchFunction constant_slope(double s);
/// u -> u/a + amp sin(pi u / a) sampled with exact slopes at n+1 knots.
lebmaps::BranchFunction sin_branch(double a, double amp, int n = 256);
std::function<double(double)> sin_exact(double a, double amp);

/// Constant slopes, sin perturbations of amplitude 0.02/0.05/0.1 and
/// canonical branches across the validity range.
std::vector<Entry> extension_corpus();

/// x -> 2x + 0.05 sin(2 pi x), which does not preserve Lebesgue measure.
lebmaps::CircleMap control_map(int n = 256);
/// phi o D o phi^-1 for the oracle conjugacy with eps = 0.1.
lebmaps::CircleMap conjugated_doubling(int n = 512);

/// Canonical branch on [0, len] plus a bump that keeps both endpoint slopes.
lebmaps::BranchFunction perturbed_canonical(double len, double c, double amp, int waves, int n = 48);

/// Arc uniformly placed so that it contains the fixed point of its map,
/// length in [0.2, 0.8], canonical profile with random slope and bump.
lebmaps::GammaElement random_gamma(std::mt19937_64& rng);

/// Random maps from random_gamma that build_path accepts.
std::vector<lebmaps::CircleMap> path_corpus(std::size_t count, std::uint64_t seed);

}  // namespace corpus
