#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include "eberlein/fourier.hpp"
#include "eberlein/measure.hpp"

namespace eberlein {

// Every generator returns a view known on `window`: the unbounded measure
// restricted to the window, tagged with it. Generating on a larger window
// and restricting gives the same atoms and cells.

/// Atoms of weight `weight` at spacing * m for every integer m in the window.
Measure lattice(double spacing, Complex weight, const Window& window);

/// Rejects alpha within 1e-9 of a rational with denominator <= 100.
void checkIncommensurate(double alpha);

/// wZ * delta_Z + wAlpha * delta_(alpha Z).
Measure incommensurate(double alpha, const Window& window, Complex wZ = 1.0,
                       Complex wAlpha = 1.0);

/// delta_Z + (2/alpha) Lebesgue + (1/alpha) delta_(alpha Z), the limit
/// autocorrelation of delta_Z + delta_(alpha Z). The density is one cell.
Measure incommensurateAutocorrelation(double alpha, const Window& window);

/// The splitmix64 output step.
std::uint64_t splitmix64(std::uint64_t& state);

/// Uniform draw in [0, 1) for site m, a pure function of (seed, m).
double siteUniform(std::uint64_t seed, std::int64_t m);

/// Weight v1 with probability p and v0 otherwise at every integer site.
Measure bernoulliComb(double p, double v1, double v0, std::uint64_t seed, const Window& window);

/// Left endpoints of the a-tiles (length tau) and b-tiles (length 1) of the
/// two-sided Fibonacci tiling with a at 0, from the fixed point of the
/// squared substitution a -> ab, b -> a grown from the seed a|a.
std::pair<Measure, Measure> fibonacciPoints(const Window& window);

/// At each integer n a triangular bump of unit mass on [n - r, n + r],
/// r = 1/max(|n|, 1), stored as 20 cells of width r/10 holding exact cell
/// averages.
Measure shrinkingBumpDensity(const Window& window);

/// P sampled at the cell midpoints of the grid j*step, clipped to the window.
Measure trigDensity(const TrigPolynomial& P, const Window& window, double step);

/// Reproducible description of a generated measure.
struct GeneratorSpec {
  enum class Kind {
    lattice,
    incommensurate,
    incommensurateLimit,
    bernoulli,
    fibonacci,
    shrinkingBump,
    trigDensity
  };
  enum class TileSet { a, b, both };

  Kind kind = Kind::lattice;
  Window window{-100.0, 100.0};
  double spacing = 1.0;
  Complex weight{1.0, 0.0};
  double alpha = 1.4142135623730951;
  double p = 0.5;
  double v1 = 1.0;
  double v0 = 0.0;
  std::uint64_t seed = 42;
  TileSet tiles = TileSet::both;
  TrigPolynomial poly;
  double step = 0.01;

  /// Kind name plus the colon separated parameter string of the CLI:
  ///   lattice          SPACING[:WEIGHT]
  ///   incommensurate   ALPHA
  ///   incommensurateLimit ALPHA
  ///   bernoulli        P[:V1:V0]
  ///   fibonacci        a|b|both
  ///   shrinkingBump    (none)
  ///   trigDensity      STEP:F1:RE1:IM1[:F2:RE2:IM2...]
  static GeneratorSpec parse(const std::string& kind, const std::string& params,
                             const Window& window, std::uint64_t seed);
  static Kind parseKind(const std::string& kind);
  static std::string kindName(Kind kind);

  Measure generate() const;
};

}  // namespace eberlein
