#pragma once

// Randomized invariant checks shared by the `verify` subcommand, the
// property tests and the acceptance run.

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "eberlein/measure.hpp"

namespace eberlein::verify {

/// A small random input for the algebraic laws.
struct Instance {
  Measure mu;
  Measure nu;
  Measure sigma;  // a third measure for linearity laws
  Window A;
  Window out;     // endpoints avoid every pair difference
  Complex a;
  Complex b;
  double t = 0.0;  // dyadic translation
  double k = 0.0;  // frequency
  bool withDensity = false;
};

/// Random instance; atoms sit on a grid of 1/8 with occasional off-grid
/// positions, so pair differences collide often.
Instance randomInstance(std::mt19937_64& rng, bool withDensity);

/// Short description used when a case fails.
std::string describe(const Instance& in);

/// Smaller variants of a failing instance (fewer atoms, no density).
std::vector<Instance> shrinkCandidates(const Instance& in);

struct CheckResult {
  std::string name;
  int cases = 0;
  int failures = 0;
  /// Largest observed violation, in the units of `tolerance`.
  double worst = 0.0;
  double tolerance = 0.0;
  /// Shrunk counterexample, if any case failed.
  std::string counterexample;
  bool passed() const { return failures == 0; }
};

/// A law returns its violation; the check fails when violation > tolerance.
struct Law {
  std::string name;
  double tolerance;
  bool needsDensity;
  std::function<double(const Instance&)> violation;
};

std::vector<Law> algebraicLaws();

/// Runs one law on `cases` random instances, shrinking the first failure.
CheckResult runLaw(const Law& law, int cases, std::uint64_t seed);

/// Every law of algebraicLaws().
std::vector<CheckResult> runSuite(int cases, std::uint64_t seed);

/// Atom-by-atom comparison: positions matched within the coalescing
/// tolerance; returns the largest weight difference, or +inf when the
/// atom sets differ.
double atomDistance(const Measure& x, const Measure& y);

/// Bitwise comparison of atoms: 0 when identical, +inf otherwise.
double atomsIdentical(const Measure& x, const Measure& y);

}  // namespace eberlein::verify
