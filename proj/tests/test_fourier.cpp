#include <doctest.h>

#include <random>

#include "eberlein/errors.hpp"
#include "eberlein/fourier.hpp"
#include "eberlein/generators.hpp"
#include "helpers.hpp"

using namespace eberlein;

namespace {

const double kAlpha = std::sqrt(2.0);

}  // namespace

TEST_CASE("lattice coefficients at finite volume") {
  const Measure z = lattice(1.0, 1.0, {-500.0, 500.0});
  for (double L : {10.0, 100.0, 400.0}) {
    // [-L, L) holds exactly 2L integers
    CHECK(fbCoefficient(z, 0.0, {-L, L}) == Complex(1.0));
    CHECK(std::abs(fbCoefficient(z, 1.0, {-L, L}) - 1.0) < 1e-14);
    CHECK(std::abs(fbCoefficient(z, 0.5, {-L, L})) < 1e-14);
    // an odd number of integers leaves one unpaired sign
    const Window odd{-L, L + 1.0};
    CHECK(std::abs(std::abs(fbCoefficient(z, 0.5, odd)) - 1.0 / odd.length()) < 1e-14);
  }
}

TEST_CASE("single atom and zero measure") {
  const Complex w{2.0, -1.0};
  const Measure m = testing::atoms({{0.3, w}});
  const Window A{-2.0, 2.0};
  const Complex expected = w * std::exp(Complex(0.0, -2.0 * std::numbers::pi * 0.7 * 0.3)) / 4.0;
  CHECK(std::abs(fbCoefficient(m, 0.7, A) - expected) < 1e-15);
  CHECK(fbCoefficient(Measure{}, 0.7, A) == Complex{});
}

TEST_CASE("density coefficients are exact cell integrals") {
  const Measure leb({}, {DensitySignal{-10.0, 0.5, std::vector<Complex>(40, 3.0)}});
  CHECK(std::abs(fbCoefficient(leb, 0.0, {-10.0, 10.0}) - 3.0) < 1e-14);
  CHECK(std::abs(fbCoefficient(leb, 1.0, {-10.0, 10.0})) < 1e-14);
  CHECK(std::abs(fbCoefficient(leb, 0.25, {-2.0, 2.0})) < 1e-14);
}

TEST_CASE("coefficient limits") {
  const auto family = VanHoveFamily::linear(100.0);
  const Window w = family.interval(64);

  const auto bern = fbLimit(bernoulliComb(0.5, 1.0, 0.0, 42, w), 0.0, family, 1e-4);
  CHECK(std::abs(bern.value - 0.5) < 0.02);

  const auto az = fbLimit(lattice(kAlpha, 1.0, w), 1.0 / kAlpha, family, 1e-4);
  CHECK(az.report.converged);
  CHECK(std::abs(az.value - 1.0 / kAlpha) < 1e-3);

  // geometric sum: |a_n| <= 1 / (|A_n| |sin(pi k)|) at irrational k
  const double k = 1.0 / kAlpha;
  for (double tol : {1e-2, 1e-3, 1e-4, 1e-5}) {
    const auto irr = fbLimit(lattice(1.0, 1.0, w), k, family, tol);
    const double len = irr.report.stages.back().length;
    CHECK(std::abs(irr.value) <= 1.0 / (len * std::abs(std::sin(std::numbers::pi * k))));
  }
}

TEST_CASE("fbLimit stops at the last covered stage") {
  const auto family = VanHoveFamily::linear(10.0);
  const auto r = fbLimit(lattice(1.0, 1.0, {-35.0, 35.0}), 0.1234, family, 1e-12, 64);
  CHECK(r.report.finalN == 3);
  CHECK_FALSE(r.report.converged);
  CHECK_THROWS_AS(fbLimit(lattice(1.0, 1.0, {-5.0, 5.0}), 0.1, family, 1e-3), SupportError);
  CHECK_THROWS_AS(fbLimit(Measure{}, 0.1, family, 0.0), ValidationError);
}

TEST_CASE("character lemma at finite volume") {
  const Measure z = lattice(1.0, 1.0, {-50.0, 50.0});
  const double t03[] = {0.3};
  CHECK(characterLemmaResidual(z, 1.0, {-20.0, 20.0}, t03) <= 1e-15);
  CHECK(characterLemmaResidual(Measure{}, 0.7, {-20.0, 20.0}, t03) == 0.0);

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int c = 0; c < 50; ++c) {
    std::vector<Atom> atoms;
    for (int i = 0; i < 20; ++i) atoms.push_back({20.0 * u(rng), {u(rng), u(rng)}});
    const Measure m(std::move(atoms), {DensitySignal{-3.0, 0.25, {{u(rng), u(rng)}, u(rng)}}});
    const double ts[] = {50.0 * u(rng), 50.0 * u(rng), 0.0};
    CHECK(characterLemmaResidual(m, 5.0 * u(rng), {-21.0, 21.0}, ts) <= 1e-12);
  }
}

TEST_CASE("consistent phases for the lattice") {
  const auto family = VanHoveFamily::linear(100.0);
  const Window w = family.interval(16);
  const Measure z = lattice(1.0, 1.0, w);
  const Measure gamma = finiteTwistedAlt(z, z, family.interval(8), {-400.0, 400.0},
                                         LimitForm::rightOnly);
  const double freqs[] = {-1.0, 0.0, 0.5, 1.0, 2.0};
  const auto rows = cppCheck(z, z, gamma, freqs, VanHoveFamily::linear(50.0), 1e-6, 8);
  REQUIRE(rows.size() == 5);
  for (const auto& r : rows) {
    if (r.k == 0.5) {
      CHECK(r.defect <= 1e-6);
    } else {
      CHECK(r.defect <= 2.0 / 400.0);
      CHECK(std::abs(r.mu - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("mean of the incommensurate autocorrelation") {
  const auto family = VanHoveFamily::linear(100.0);
  const Window w = family.interval(32);
  const Measure mu = incommensurate(kAlpha, w);
  const Measure gamma = incommensurateAutocorrelation(kAlpha, w);
  const double zero[] = {0.0};
  const auto rows = cppCheck(mu, mu, gamma, zero, family, 1e-6, 32);
  const double a = 1.0 + 1.0 / kAlpha;
  CHECK(std::abs(rows[0].gamma - a * a) < 1e-3);
  CHECK(std::abs(rows[0].mu - a) < 1e-3);
  CHECK(rows[0].defect < 5e-3);
}

TEST_CASE("cppCheck rejects gamma known on too small a window") {
  const auto family = VanHoveFamily::linear(100.0);
  const Measure z = lattice(1.0, 1.0, family.interval(4));
  const Measure small = lattice(1.0, 1.0, {-10.0, 10.0});
  const double k[] = {0.0};
  CHECK_THROWS_AS(cppCheck(z, z, small, k, family, 1e-3, 4), ValidationError);
}

TEST_CASE("pure-point part of simple autocorrelations") {
  const auto family = VanHoveFamily::linear(20.0);
  const double candidates[] = {-1.0, -0.5, 0.0, 1.0 / kAlpha, 0.5, 1.0, 2.0};

  const auto lat = diffractPointPart(lattice(1.0, 1.0, {-200.0, 200.0}), candidates, family, 0.01, 10);
  int integers = 0;
  for (const auto& p : lat) {
    if (p.k == std::round(p.k)) {
      ++integers;
      CHECK(std::abs(p.amplitude - 1.0) < 1e-12);
    } else {
      CHECK(std::abs(p.amplitude) <= 1.0 / (40.0 * std::abs(std::sin(std::numbers::pi * p.k))));
    }
  }
  CHECK(integers == 4);

  const Measure leb({}, {DensitySignal{-200.0, 0.5, std::vector<Complex>(800, 0.3)}},
                    Window{-200.0, 200.0});
  const auto flat = diffractPointPart(leb, candidates, family, 0.01, 10);
  REQUIRE(flat.size() == 1);
  CHECK(flat[0].k == 0.0);
  CHECK(std::abs(flat[0].amplitude - 0.3) < 1e-12);
}

TEST_CASE("Bernoulli diffraction: Bragg part p^2 at integers") {
  const auto big = VanHoveFamily::linear(100.0);
  const Window w = big.interval(64).expanded(210.0);
  const Measure b = bernoulliComb(0.5, 1.0, 0.0, 42, w);
  const Measure gamma = finiteTwisted(b, b, big.interval(64), {-200.0, 200.0});
  const double candidates[] = {0.0, 1.0 / kAlpha, 0.5, 0.25, 1.0};
  const auto amps = diffractPointPart(gamma, candidates, VanHoveFamily::linear(20.0), 0.01, 10);
  for (const auto& p : amps) {
    CHECK(p.k == std::round(p.k));
    CHECK(std::abs(p.amplitude - 0.25) < 0.02);
  }
  CHECK(amps.size() == 2);
}

TEST_CASE("trig polynomials") {
  CHECK_THROWS_AS(TrigPolynomial::make({{1.0, 1.0}, {1.0, 2.0}}), ValidationError);
  const auto P = TrigPolynomial::make({{1.0, 1.0}});
  const Window w{-200.0, 200.0};
  const double step = 0.01;
  const Measure d = trigDensity(P, w, step);
  const Complex a1 = fbCoefficient(d, 1.0, {-100.0, 100.0});
  CHECK(std::abs(a1 - 1.0) < 1e-3);
  CHECK(std::abs(a1 - 1.0) > 0.0);
}
