#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include <doctest.h>

#include "eberlein/measure.hpp"

namespace testing {

using eberlein::Complex;
using eberlein::Measure;

inline Measure atoms(std::vector<eberlein::Atom> a) { return Measure(std::move(a)); }

// weight of the atom at x (within 1e-9), if any
inline std::optional<Complex> atomAt(const Measure& m, double x) {
  for (const auto& a : m.atoms()) {
    if (std::abs(a.position - x) <= 1e-9 * std::max(1.0, std::abs(x))) return a.weight;
  }
  return std::nullopt;
}

inline Complex atomWeight(const Measure& m, double x) {
  const auto w = atomAt(m, x);
  REQUIRE_MESSAGE(w.has_value(), "no atom at " << x);
  return *w;
}

}  // namespace testing
