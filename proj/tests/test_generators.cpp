#include <doctest.h>

#include <cmath>

#include "eberlein/errors.hpp"
#include "eberlein/generators.hpp"
#include "eberlein/io.hpp"
#include "helpers.hpp"

using namespace eberlein;

namespace {

const double kTau = (1.0 + std::sqrt(5.0)) / 2.0;

std::vector<double> positions(const Measure& m) {
  std::vector<double> v;
  for (const auto& a : m.atoms()) v.push_back(a.position);
  return v;
}

bool identical(const Measure& x, const Measure& y) {
  return std::equal(x.atoms().begin(), x.atoms().end(), y.atoms().begin(), y.atoms().end()) &&
         x.density() == y.density();
}

}  // namespace

TEST_CASE("lattice generator") {
  CHECK(positions(lattice(1.0, 1.0, {-2.0, 2.0})) == std::vector<double>{-2.0, -1.0, 0.0, 1.0});
  CHECK(positions(lattice(1.0, 1.0, {0.0, 0.5})) == std::vector<double>{0.0});
  const double a = std::sqrt(2.0);
  const Measure s = lattice(a, 1.0 / a, {-5.0, 5.0});
  REQUIRE(s.atoms().size() == 7);
  for (const auto& x : s.atoms()) {
    CHECK(x.weight == Complex(1.0 / a));
    CHECK(std::abs(x.position / a - std::round(x.position / a)) < 1e-15);
  }
  CHECK(s.sampledOn() == Window{-5.0, 5.0});
  CHECK_THROWS_AS(lattice(0.0, 1.0, {-1.0, 1.0}), ValidationError);
}

TEST_CASE("incommensurate generator rejects rational ratios") {
  CHECK_THROWS_AS(incommensurate(1.5, {-5.0, 5.0}), ValidationError);
  CHECK_THROWS_AS(incommensurate(22.0 / 7.0, {-5.0, 5.0}), ValidationError);
  CHECK_NOTHROW(incommensurate(std::sqrt(2.0), {-5.0, 5.0}));
}

TEST_CASE("Bernoulli comb: pinned draws for seed 42") {
  const Measure golden =
      io::readMeasure(std::string(EBERLEIN_GOLDEN_DIR) + "/bernoulli_p05_seed42_0_10.json");
  const Measure b = bernoulliComb(0.5, 1.0, 0.0, 42, {0.0, 10.0});
  CHECK(identical(b, golden));
  CHECK(positions(b) == std::vector<double>{0, 1, 2, 3, 6, 7, 9});
}

TEST_CASE("Bernoulli comb with equal values is the lattice") {
  for (std::uint64_t seed : {1u, 42u, 1234567u}) {
    for (double p : {0.1, 0.5, 0.9}) {
      CHECK(identical(bernoulliComb(p, 1.0, 1.0, seed, {-50.0, 50.0}),
                      lattice(1.0, 1.0, {-50.0, 50.0})));
    }
  }
}

TEST_CASE("Bernoulli comb site frequency") {
  for (double p : {0.3, 0.5}) {
    const Measure b = bernoulliComb(p, 1.0, 0.0, 42, {0.0, 1e6});
    const double freq = static_cast<double>(b.atoms().size()) / 1e6;
    CHECK(std::abs(freq - p) <= 3.0 * std::sqrt(p * (1.0 - p) / 1e6));
  }
  CHECK_THROWS_AS(bernoulliComb(0.0, 1.0, 0.0, 1, {0.0, 1.0}), ValidationError);
  CHECK_THROWS_AS(bernoulliComb(1.0, 1.0, 0.0, 1, {0.0, 1.0}), ValidationError);
}

TEST_CASE("Bernoulli draws are keyed by site") {
  CHECK(siteUniform(42, 17) == siteUniform(42, 17));
  CHECK(siteUniform(42, 17) != siteUniform(43, 17));
  CHECK(siteUniform(42, 17) != siteUniform(42, 18));
  for (std::int64_t m = -1000; m < 1000; ++m) {
    const double u = siteUniform(99, m);
    CHECK((u >= 0.0 && u < 1.0));
  }
}

TEST_CASE("Fibonacci tiling from the origin") {
  const auto [a, b] = fibonacciPoints({0.0, 20.0});
  const Measure golden = io::readMeasure(std::string(EBERLEIN_GOLDEN_DIR) + "/fibonacci_0_20.json");
  CHECK(identical(addScaled(a, b, 1.0, 1.0), golden));
  const auto pa = positions(a);
  const auto pb = positions(b);
  REQUIRE(pa.size() >= 3);
  REQUIRE(pb.size() >= 2);
  CHECK(pa[0] == 0.0);
  CHECK(pb[0] == doctest::Approx(kTau));
  CHECK(pa[1] == doctest::Approx(kTau + 1.0));
  CHECK(pa[2] == doctest::Approx(2.0 * kTau + 1.0));
  CHECK(pb[1] == doctest::Approx(3.0 * kTau + 1.0));
}

TEST_CASE("Fibonacci frequencies and gaps") {
  const auto [a, b] = fibonacciPoints({0.0, 1e4});
  const double na = static_cast<double>(a.atoms().size());
  const double nb = static_cast<double>(b.atoms().size());
  CHECK(std::abs(na / (na + nb) - 1.0 / kTau) < 0.01);
  CHECK(std::abs(na * kTau / (na * kTau + nb) - kTau * kTau / (1.0 + kTau * kTau)) < 0.01);

  const auto [la, lb] = fibonacciPoints({-500.0, 500.0});
  const auto all = positions(addScaled(la, lb, 1.0, 1.0));
  for (std::size_t i = 1; i < all.size(); ++i) {
    const double gap = all[i] - all[i - 1];
    CHECK((std::abs(gap - 1.0) < 1e-9 || std::abs(gap - kTau) < 1e-9));
  }
}

TEST_CASE("shrinking bumps") {
  const Measure f = shrinkingBumpDensity({-30.0, 30.0});
  for (const auto& d : f.density()) {
    for (const auto& s : d.samples) {
      CHECK(s.real() >= 0.0);
      CHECK(s.imag() == 0.0);
    }
  }
  CHECK(std::abs(restrict(f, {-2.5, 2.5}).totalMass().real() - 5.0) < 1e-12);
  for (int n : {-25, -7, -3, 3, 12, 28}) {
    const double r = 1.0 / std::max(std::abs(n), 1);
    const Measure bump = restrict(f, {n - 0.5, n + 0.5});
    CHECK(std::abs(bump.totalMass().real() - 1.0) < 1e-12);
    const auto hull = bump.hull();
    REQUIRE(hull.has_value());
    CHECK(hull->lo >= n - r - 1e-12);
    CHECK(hull->hi <= n + r + 1e-12);
  }
}

TEST_CASE("trig density of a constant is Lebesgue") {
  const auto one = TrigPolynomial::make({{0.0, 1.0}});
  const Measure m = trigDensity(one, {-3.0, 3.0}, 0.25);
  REQUIRE(m.density().size() == 1);
  for (const auto& s : m.density()[0].samples) CHECK(s == Complex(1.0));
  CHECK(m.totalMass() == Complex(6.0));
}

TEST_CASE("generators are window consistent") {
  const Window big{-37.3, 41.9};
  const Window small{-11.1, 13.7};
  const auto P = TrigPolynomial::make({{0.5, {1.0, 2.0}}, {std::sqrt(3.0), -1.0}});
  for (const char* kind : {"lattice", "incommensurate", "incommensurateLimit", "bernoulli",
                           "fibonacci", "shrinkingBump", "trigDensity"}) {
    const std::string params = std::string(kind) == "lattice"      ? "0.75:2"
                               : std::string(kind) == "bernoulli"  ? "0.3:1:-1"
                               : std::string(kind) == "fibonacci"  ? "both"
                               : std::string(kind) == "trigDensity" ? "0.05:0.5:1:2:1.7:-1:0"
                               : std::string(kind) == "shrinkingBump" ? ""
                                                                     : "1.4142135623730951";
    const Measure full = GeneratorSpec::parse(kind, params, big, 9).generate();
    const Measure part = GeneratorSpec::parse(kind, params, small, 9).generate();
    const Measure cut = restrict(full, small);
    const std::string name = kind;
    CAPTURE(name);
    CHECK(std::equal(cut.atoms().begin(), cut.atoms().end(), part.atoms().begin(),
                     part.atoms().end()));
    REQUIRE(cut.density().size() == part.density().size());
    for (std::size_t i = 0; i < cut.density().size(); ++i) {
      const auto& x = cut.density()[i];
      const auto& y = part.density()[i];
      CHECK(x.step == y.step);
      CHECK(std::abs(x.origin - y.origin) <= 1e-12);
      REQUIRE(x.size() == y.size());
      for (std::size_t j = 0; j < x.size(); ++j) CHECK(std::abs(x.samples[j] - y.samples[j]) <= 1e-12);
    }
  }
  (void)P;
}

TEST_CASE("generator specs") {
  CHECK_THROWS_AS(GeneratorSpec::parseKind("sierpinski"), ValidationError);
  CHECK_THROWS_AS(GeneratorSpec::parse("bernoulli", "x", {0.0, 1.0}, 1), ValidationError);
  const auto spec = GeneratorSpec::parse("bernoulli", "0.3:1:-1", {-5.0, 5.0}, 7);
  const auto back = io::generatorSpecFromJson(io::toJson(spec));
  CHECK(identical(spec.generate(), back.generate()));
  CHECK(GeneratorSpec::kindName(GeneratorSpec::parseKind("trigDensity")) == "trigDensity");
}
