#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qfdiv/divergences.hpp"
#include "qfdiv/ocf.hpp"
#include "qfdiv/states.hpp"

namespace qfdiv {

// Outcome of one property suite: how many seeded trials ran, how many
// individual checks failed, and the largest observed excess over tolerance.
struct SuiteResult {
  std::string property;
  std::string summary;
  int trials = 0;
  int checks = 0;
  int violations = 0;
  double worst_excess = 0.0;
  std::vector<std::string> failures;  // first few failing checks, described

  bool pass() const { return violations == 0; }
};

// The ten numbered suites, in order: transpose symmetry, orthogonal
// additivity, data processing, joint convexity, standard-vs-maximal order,
// quadratic collapse, finiteness, route agreement, semigroup continuity,
// Renyi ordering.
const std::vector<std::string>& property_names();

// Runs one named suite ("P1".."P10") with per-trial seeds derived from
// (seed, trial index).
SuiteResult run_property(const std::string& name, int trials,
                         std::uint64_t seed);

std::vector<SuiteResult> run_all_properties(int trials, std::uint64_t seed);

// The function set the suites cycle through: x log x, -log, -t^0.5, t^1.5,
// (t-1)^2, and (t-1)^2/(t+1).
const std::vector<OperatorConvexFunction>& builtin_functions();

// Sum_j w_j t^2/(t+s_j) assembled in canonical form; vanishes at 0+ with
// slope Sum_j w_j at infinity. The family whose sigma-perturbed divergence
// is monotone in the perturbation size.
OperatorConvexFunction ratio_quadratic(const std::vector<CanonicalAtom>& atoms);

}  // namespace qfdiv
