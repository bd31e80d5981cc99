#include "eberlein/generators.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "eberlein/errors.hpp"
#include "eberlein/smoothing.hpp"

namespace eberlein {

namespace {

constexpr double kTwo40 = 1099511627776.0;

void checkWindow(const Window& w) { (void)Window::make(w.lo, w.hi); }

}  // namespace

Measure lattice(double spacing, Complex weight, const Window& window) {
  checkWindow(window);
  if (!(spacing > 0.0) || !std::isfinite(spacing)) throw ValidationError("spacing must be > 0");
  const auto m0 = static_cast<long long>(std::floor(window.lo / spacing)) - 1;
  const auto m1 = static_cast<long long>(std::ceil(window.hi / spacing)) + 1;
  if (static_cast<double>(m1 - m0) > 5e7) throw ValidationError("lattice window too large");
  std::vector<Atom> atoms;
  atoms.reserve(static_cast<std::size_t>(m1 - m0 + 1));
  for (long long m = m0; m <= m1; ++m) {
    const double x = spacing * static_cast<double>(m);
    if (window.contains(x)) atoms.push_back({x, weight});
  }
  return Measure(std::move(atoms), {}, window);
}

void checkIncommensurate(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw ValidationError("alpha must be > 0");
  for (int q = 1; q <= 100; ++q) {
    const double p = std::nearbyint(alpha * q);
    if (std::abs(alpha - p / q) < 1e-9) {
      throw ValidationError("alpha is too close to the rational " +
                            std::to_string(static_cast<long long>(p)) + "/" + std::to_string(q));
    }
  }
}

Measure incommensurate(double alpha, const Window& window, Complex wZ, Complex wAlpha) {
  checkIncommensurate(alpha);
  const Measure z = lattice(1.0, wZ, window);
  const Measure a = lattice(alpha, wAlpha, window);
  return addScaled(z, a, 1.0, 1.0);
}

Measure incommensurateAutocorrelation(double alpha, const Window& window) {
  checkIncommensurate(alpha);
  const Measure atoms = incommensurate(alpha, window, 1.0, 1.0 / alpha);
  DensitySignal flat{window.lo, window.length(), {Complex{2.0 / alpha, 0.0}}};
  std::vector<Atom> list(atoms.atoms().begin(), atoms.atoms().end());
  return Measure(std::move(list), {std::move(flat)}, window);
}

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double siteUniform(std::uint64_t seed, std::int64_t m) {
  std::uint64_t key = static_cast<std::uint64_t>(m);
  std::uint64_t state = seed ^ splitmix64(key);
  return static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
}

Measure bernoulliComb(double p, double v1, double v0, std::uint64_t seed, const Window& window) {
  checkWindow(window);
  if (!(p > 0.0 && p < 1.0)) throw ValidationError("p must lie in (0, 1)");
  if (!std::isfinite(v1) || !std::isfinite(v0)) throw ValidationError("values must be finite");
  if (std::abs(window.lo) > kTwo40 || std::abs(window.hi) > kTwo40) {
    throw ValidationError("window endpoints must lie within +-2^40");
  }
  if (window.length() > 5e7) throw ValidationError("window too large for a Bernoulli comb");
  const auto m0 = static_cast<std::int64_t>(std::ceil(window.lo));
  std::vector<Atom> atoms;
  for (std::int64_t m = m0; static_cast<double>(m) < window.hi; ++m) {
    const double w = siteUniform(seed, m) < p ? v1 : v0;
    if (w != 0.0) atoms.push_back({static_cast<double>(m), w});
  }
  return Measure(std::move(atoms), {}, window);
}

std::pair<Measure, Measure> fibonacciPoints(const Window& window) {
  checkWindow(window);
  const double tau = std::numbers::phi;
  const double need = std::max(std::abs(window.lo), std::abs(window.hi));
  // sigma^2: a -> aba, b -> ab
  std::string word = "a";
  double length = tau;
  while (length < need) {
    if (word.size() > 50'000'000) throw ValidationError("window not coverable within the iteration cap");
    std::string next;
    next.reserve(word.size() * 3);
    for (char c : word) next += c == 'a' ? "aba" : "ab";
    word = std::move(next);
    long long na = 0;
    for (char c : word) na += c == 'a';
    length = static_cast<double>(na) * tau + static_cast<double>(word.size() - na);
  }
  std::vector<Atom> a;
  std::vector<Atom> b;
  auto emit = [&](char c, double x) {
    if (window.contains(x)) (c == 'a' ? a : b).push_back({x, 1.0});
  };
  // right half from 0, left half ending at 0; positions from tile counts
  long long na = 0, nb = 0;
  for (char c : word) {
    const double x = static_cast<double>(na) * tau + static_cast<double>(nb);
    if (x >= window.hi) break;
    emit(c, x);
    (c == 'a' ? na : nb) += 1;
  }
  na = nb = 0;
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    (*it == 'a' ? na : nb) += 1;
    const double x = -(static_cast<double>(na) * tau + static_cast<double>(nb));
    if (x + (*it == 'a' ? tau : 1.0) <= window.lo) break;
    emit(*it, x);
  }
  return {Measure(std::move(a), {}, window), Measure(std::move(b), {}, window)};
}

Measure shrinkingBumpDensity(const Window& window) {
  checkWindow(window);
  if (window.length() > 1e6) throw ValidationError("window too large for the bump density");
  const auto n0 = static_cast<long long>(std::floor(window.lo)) - 1;
  const auto n1 = static_cast<long long>(std::ceil(window.hi)) + 1;
  std::vector<DensitySignal> pieces;
  for (long long n = n0; n <= n1; ++n) {
    const double r = 1.0 / static_cast<double>(std::max(std::llabs(n), 1LL));
    const double h = r / 10.0;
    const double c = static_cast<double>(n);
    const auto bump = SmoothingKernel::tent(r);
    DensitySignal d{c - r, h, {}};
    d.samples.reserve(20);
    for (int i = 0; i < 20; ++i) {
      const double lo = d.origin + i * h;
      d.samples.emplace_back(bump.cellIntegral(c, lo, lo + h) / h, 0.0);
    }
    if (d.end() > window.lo && d.origin < window.hi) pieces.push_back(std::move(d));
  }
  return restrict(Measure({}, std::move(pieces)), window).withSampledOn(window);
}

Measure trigDensity(const TrigPolynomial& P, const Window& window, double step) {
  checkWindow(window);
  if (!(step > 0.0) || !std::isfinite(step)) throw ValidationError("step must be > 0");
  // cells sit on the global grid j*step so that every window sees the same samples
  const double j0 = std::floor(window.lo / step);
  const double j1 = std::ceil(window.hi / step);
  if (j1 - j0 > 5e7) throw ValidationError("too many density cells");
  DensitySignal d{j0 * step, step, {}};
  d.samples.resize(static_cast<std::size_t>(j1 - j0));
  for (std::size_t i = 0; i < d.size(); ++i) {
    d.samples[i] = P((j0 + static_cast<double>(i) + 0.5) * step);
  }
  return restrict(Measure({}, {std::move(d)}), window).withSampledOn(window);
}

namespace {

std::vector<std::string> splitColon(const std::string& s) {
  std::vector<std::string> parts;
  if (s.empty()) return parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  return parts;
}

double toNumber(const std::string& s) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ValidationError("bad number '" + s + "' in generator parameters");
  }
}

}  // namespace

GeneratorSpec::Kind GeneratorSpec::parseKind(const std::string& kind) {
  for (Kind k : {Kind::lattice, Kind::incommensurate, Kind::incommensurateLimit, Kind::bernoulli,
                 Kind::fibonacci, Kind::shrinkingBump, Kind::trigDensity}) {
    if (kindName(k) == kind) return k;
  }
  throw ValidationError("unknown generator kind '" + kind + "'");
}

std::string GeneratorSpec::kindName(Kind kind) {
  switch (kind) {
    case Kind::lattice: return "lattice";
    case Kind::incommensurate: return "incommensurate";
    case Kind::incommensurateLimit: return "incommensurateLimit";
    case Kind::bernoulli: return "bernoulli";
    case Kind::fibonacci: return "fibonacci";
    case Kind::shrinkingBump: return "shrinkingBump";
    case Kind::trigDensity: return "trigDensity";
  }
  return "unknown";
}

GeneratorSpec GeneratorSpec::parse(const std::string& kind, const std::string& params,
                                   const Window& window, std::uint64_t seed) {
  GeneratorSpec g;
  g.kind = parseKind(kind);
  g.window = Window::make(window.lo, window.hi);
  g.seed = seed;
  const auto parts = splitColon(params);
  auto arity = [&](std::size_t lo, std::size_t hi) {
    if (parts.size() < lo || parts.size() > hi) {
      throw ValidationError("wrong number of parameters for " + kind + ": '" + params + "'");
    }
  };
  switch (g.kind) {
    case Kind::lattice:
      arity(0, 2);
      if (parts.size() >= 1) g.spacing = toNumber(parts[0]);
      if (parts.size() == 2) g.weight = toNumber(parts[1]);
      break;
    case Kind::incommensurate:
    case Kind::incommensurateLimit:
      arity(0, 1);
      if (parts.size() == 1) g.alpha = toNumber(parts[0]);
      break;
    case Kind::bernoulli:
      if (parts.size() != 0 && parts.size() != 1 && parts.size() != 3) arity(3, 3);
      if (parts.size() >= 1) g.p = toNumber(parts[0]);
      if (parts.size() == 3) {
        g.v1 = toNumber(parts[1]);
        g.v0 = toNumber(parts[2]);
      }
      break;
    case Kind::fibonacci:
      arity(0, 1);
      if (parts.empty() || parts[0] == "both") {
        g.tiles = TileSet::both;
      } else if (parts[0] == "a") {
        g.tiles = TileSet::a;
      } else if (parts[0] == "b") {
        g.tiles = TileSet::b;
      } else {
        throw ValidationError("fibonacci parameter must be a, b or both");
      }
      break;
    case Kind::shrinkingBump:
      arity(0, 0);
      break;
    case Kind::trigDensity: {
      if (parts.size() < 4 || (parts.size() - 1) % 3 != 0) {
        throw ValidationError("trigDensity parameters are STEP:F:RE:IM[:F:RE:IM...]");
      }
      g.step = toNumber(parts[0]);
      std::vector<TrigPolynomial::Term> terms;
      for (std::size_t i = 1; i < parts.size(); i += 3) {
        terms.push_back({toNumber(parts[i]), {toNumber(parts[i + 1]), toNumber(parts[i + 2])}});
      }
      g.poly = TrigPolynomial::make(std::move(terms));
      break;
    }
  }
  return g;
}

Measure GeneratorSpec::generate() const {
  switch (kind) {
    case Kind::lattice: return lattice(spacing, weight, window);
    case Kind::incommensurate: return incommensurate(alpha, window);
    case Kind::incommensurateLimit: return incommensurateAutocorrelation(alpha, window);
    case Kind::bernoulli: return bernoulliComb(p, v1, v0, seed, window);
    case Kind::fibonacci: {
      auto [a, b] = fibonacciPoints(window);
      if (tiles == TileSet::a) return a;
      if (tiles == TileSet::b) return b;
      return addScaled(a, b, 1.0, 1.0);
    }
    case Kind::shrinkingBump: return shrinkingBumpDensity(window);
    case Kind::trigDensity: return trigDensity(poly, window, step);
  }
  throw ValidationError("unknown generator kind");
}

}  // namespace eberlein
