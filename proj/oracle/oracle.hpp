#pragma once

// Naive reference evaluations. Nothing here reuses the engine's pair
// search, clustering, binning or compensated sums.

#include "eberlein/measure.hpp"

namespace eberlein::oracle {

inline constexpr std::size_t kMaxAtoms = 10'000;

/// (1/|A|) (mu|A) * ~(nu|A) on `out` by literal double loops. Atom pairs are
/// merged by linear scan. Density cells are treated as point masses at their
/// midpoints and the resulting mass is deposited into cells of width
/// `densityStep` starting at out.lo (0 picks the finest input step).
Measure bruteTwisted(const Measure& mu, const Measure& nu, const Window& A, const Window& out,
                     double densityStep = 0.0);

/// (1/|A|) int_A exp(-2 pi i k s) dmu(s) summed in stored order with std::exp.
Complex bruteFB(const Measure& mu, double k, const Window& A);

}  // namespace eberlein::oracle
