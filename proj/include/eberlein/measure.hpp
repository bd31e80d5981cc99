#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "eberlein/numerics.hpp"

namespace eberlein {

/// Half-open interval [lo, hi). Every restriction in the library uses this
/// convention, so a set and its complement partition mass exactly.
struct Window {
  double lo = 0.0;
  double hi = 0.0;

  /// Throws ValidationError unless lo < hi and both are finite.
  static Window make(double lo, double hi);

  double length() const { return hi - lo; }
  double center() const { return 0.5 * (lo + hi); }
  bool contains(double x) const { return lo <= x && x < hi; }
  bool covers(const Window& other) const { return lo <= other.lo && other.hi <= hi; }
  Window shifted(double t) const { return {lo + t, hi + t}; }
  /// Reflection x -> -x of the interval, kept half-open as [-hi, -lo).
  Window negated() const { return {-hi, -lo}; }
  Window expanded(double r) const { return {lo - r, hi + r}; }

  friend bool operator==(const Window&, const Window&) = default;
};

std::optional<Window> intersect(const Window& a, const Window& b);

struct Atom {
  double position = 0.0;
  Complex weight;

  friend bool operator==(const Atom&, const Atom&) = default;
};

/// Piecewise-constant density: value samples[i] on
/// [origin + i*step, origin + (i+1)*step).
struct DensitySignal {
  double origin = 0.0;
  double step = 1.0;
  std::vector<Complex> samples;

  std::size_t size() const { return samples.size(); }
  double cellLo(std::size_t i) const { return origin + static_cast<double>(i) * step; }
  double cellHi(std::size_t i) const { return origin + static_cast<double>(i + 1) * step; }
  double end() const { return cellHi(samples.size() - 1); }
  Complex mass() const;

  friend bool operator==(const DensitySignal&, const DensitySignal&) = default;
};

/// Merge threshold for two atom positions: 1e-9 * max(1, |a|, |b|).
double coalescingTolerance(double a, double b);

/// Translation-bounded measure on the real line: a sorted, coalesced atomic
/// part plus a sum of piecewise-constant density segments.
///
/// A measure is either compact (it is exactly the finite object stored) or a
/// view of an unbounded measure that is only faithful on `sampledOn()`.
/// Generators return views; `restrict` returns compact measures.
class Measure {
 public:
  Measure() = default;

  /// Sorts atoms (stable), merges atoms closer than coalescingTolerance by
  /// summing their weights in input order within each cluster, drops exact
  /// zero weights and empty density segments, and caches kBound().
  explicit Measure(std::vector<Atom> atoms, std::vector<DensitySignal> density = {},
                   std::optional<Window> sampledOn = std::nullopt);

  std::span<const Atom> atoms() const { return atoms_; }
  /// Density segments ordered by origin.
  const std::vector<DensitySignal>& density() const { return density_; }
  /// Index range [first, last) of the segments that can meet [lo, hi).
  std::pair<std::size_t, std::size_t> segmentsNear(double lo, double hi) const;
  std::optional<Window> sampledOn() const { return sampledOn_; }
  bool compact() const { return !sampledOn_.has_value(); }

  /// sup_t |mu|([t, t+1)) evaluated over the stored support.
  double kBound() const { return kBound_; }

  bool empty() const { return atoms_.empty() && density_.empty(); }
  /// Smallest interval holding every atom and density cell, if any.
  std::optional<Window> hull() const;
  Complex totalMass() const;

  /// True when the measure is known on all of `w`.
  bool knownOn(const Window& w) const { return !sampledOn_ || sampledOn_->covers(w); }

  Measure scaled(Complex c) const;
  Measure withSampledOn(std::optional<Window> w) const;

 private:
  std::vector<Atom> atoms_;
  std::vector<DensitySignal> density_;
  std::optional<Window> sampledOn_;
  double kBound_ = 0.0;
  double longestSegment_ = 0.0;
};

/// Sort-and-merge coalescing used by the Measure constructor.
std::vector<Atom> coalesce(std::vector<Atom> atoms);

Measure restrict(const Measure& mu, const Window& interval);
/// x -> -x with complex conjugation of every weight and density value.
Measure reflectTilde(const Measure& mu);
/// x -> -x without conjugation.
Measure reflectDagger(const Measure& mu);
Measure translate(const Measure& mu, double t);
/// a*mu + b*nu. Densities on identical grids are summed sample-wise,
/// otherwise segments are concatenated.
Measure addScaled(const Measure& mu, const Measure& nu, Complex a, Complex b);

/// sup over x in `search` of |mu|([x, x + kLen)), exact for the atomic part
/// and the piecewise-linear density contribution (event sweep).
double slidingTotalVariationSup(const Measure& mu, double kLen, const Window& search);

/// Cell-proportional mass reassignment of a density segment onto the grid
/// origin + j*step. Conserves total mass.
DensitySignal resample(const DensitySignal& d, double step, double origin);

}  // namespace eberlein
