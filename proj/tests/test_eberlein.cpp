#include <doctest.h>

#include "eberlein/eberlein.hpp"
#include "eberlein/errors.hpp"
#include "eberlein/generators.hpp"
#include "helpers.hpp"

using namespace eberlein;
using testing::atomWeight;

namespace {

double maxProbe(const Measure& m, const ProbeSeminorm& p) { return probeNorm(m, p); }

}  // namespace

TEST_CASE("lattice autocorrelation at finite volume counts pairs") {
  const Measure z = lattice(1.0, 1.0, {-200.0, 200.0});
  const Measure g = finiteTwisted(z, z, {-100.0, 100.0}, {-5.0, 5.0});
  REQUIRE(g.atoms().size() == 10);
  // the half-open window holds 200 integers, so the count at lag j is 200 - |j|
  for (int j = -5; j < 5; ++j) CHECK(atomWeight(g, j).real() == (200.0 - std::abs(j)) / 200.0);
  CHECK(g.sampledOn() == Window{-5.0, 5.0});
}

TEST_CASE("single atom gives 1/|A|") {
  const Measure d0 = testing::atoms({{0.0, 1.0}});
  for (const Window A : {Window{-1.0, 1.0}, Window{-0.25, 10.0}}) {
    const Measure g = finiteTwisted(d0, d0, A, {-1.0, 1.0});
    REQUIRE(g.atoms().size() == 1);
    CHECK(atomWeight(g, 0.0) == Complex(1.0 / A.length()));
  }
}

TEST_CASE("incommensurate superposition after smoothing") {
  const double alpha = std::sqrt(2.0);
  const double L = 800.0;
  const Measure mu = incommensurate(alpha, {-L - 10.0, L + 10.0});
  const Measure g = finiteTwisted(mu, mu, {-L, L}, {-3.0, 3.0});
  // integer and alpha atoms carry exact weights up to O(1/L)
  CHECK(std::abs(atomWeight(g, 1.0).real() - 1.0) < 0.01);
  CHECK(std::abs(atomWeight(g, alpha).real() - 1.0 / alpha) < 0.01);
  // away from both lattices the tent probe sees the cross-term cloud
  ProbeSeminorm p;
  p.tentWidth = 0.2;
  p.centers = {0.5, -0.5, 2.3};
  for (const auto& v : probeEval(g, p)) CHECK(std::abs(v.real() - 2.0 / alpha) < 0.1);
}

TEST_CASE("untwisted form of a symmetric real comb equals the twisted one") {
  const Measure z = lattice(1.0, 1.0, {-60.0, 60.0});
  const Measure a = finiteTwisted(z, z, {-50.0, 50.0}, {-5.0, 5.0});
  const Measure b = finiteEberlein(z, z, {-50.0, 50.0}, {-5.0, 5.0});
  REQUIRE(a.atoms().size() == b.atoms().size());
  for (const auto& x : a.atoms()) CHECK(atomWeight(b, x.position) == x.weight);
}

TEST_CASE("three limit forms") {
  const Measure z = lattice(1.0, 1.0, {-500.0, 500.0});
  const Window out{-5.0, 5.0};
  const auto probe = ProbeSeminorm::grid(out);
  for (double L : {50.0, 100.0, 200.0}) {
    const Window A{-L, L};
    const Measure both = finiteTwistedAlt(z, z, A, out, LimitForm::both);
    const Measure plain = finiteTwisted(z, z, A, out);
    REQUIRE(both.atoms().size() == plain.atoms().size());
    CHECK(std::equal(both.atoms().begin(), both.atoms().end(), plain.atoms().begin()));
    const Measure left = finiteTwistedAlt(z, z, A, out, LimitForm::leftOnly);
    const Measure right = finiteTwistedAlt(z, z, A, out, LimitForm::rightOnly);
    // each missing pair contributes 1/(2L) at lag j, |j| <= 5, over a tent of height 4
    const double bound = 4.0 * 2.0 * 5.0 / A.length();
    CHECK(probeDistance(left, both, probe) <= bound);
    CHECK(probeDistance(right, both, probe) <= bound);
    CHECK(probeDistance(left, both, probe) > 0.0);
  }
}

TEST_CASE("boundary defect is the left-only minus two-sided form") {
  const Measure z = lattice(1.0, 1.0, {-500.0, 500.0});
  const Window out{-2.0, 2.0};
  const auto probe = ProbeSeminorm::grid(out, 1.0, 0.05);
  double previous = 0.0;
  for (double L : {50.0, 100.0, 200.0}) {
    const Window A{-L, L};
    const double defect = boundaryDefect(z, z, A, probe);
    const Window reach = probe.reach();
    const Measure diff = addScaled(finiteTwistedAlt(z, z, A, reach, LimitForm::leftOnly),
                                   finiteTwistedAlt(z, z, A, reach, LimitForm::both), 1.0, -1.0);
    CHECK(defect == doctest::Approx(probeNorm(diff, probe)).epsilon(1e-14));
    CHECK(defect > 0.0);
    CHECK(defect <= 2.0 * 1.0 / A.length());
    if (previous > 0.0) CHECK(previous / defect == doctest::Approx(2.0).epsilon(0.1));
    previous = defect;
  }
  CHECK(boundaryDefect(z, Measure{}, {-50.0, 50.0}, probe) == 0.0);
}

TEST_CASE("boundary defect needs mu beyond A") {
  const Measure z = lattice(1.0, 1.0, {-50.0, 50.0});
  const auto probe = ProbeSeminorm::grid({-2.0, 2.0}, 1.0, 0.05);
  CHECK_THROWS_AS(boundaryDefect(z, z, {-50.0, 50.0}, probe), SupportError);
}

TEST_CASE("finite-volume inputs are validated") {
  const Measure z = lattice(1.0, 1.0, {-50.0, 50.0});
  CHECK_THROWS_AS(finiteTwisted(z, z, {-60.0, 60.0}, {-1.0, 1.0}), SupportError);
  CHECK_THROWS_AS(finiteTwisted(z, z, {-5.0, 5.0}, {-20.0, 1.0}), ValidationError);
}

TEST_CASE("twistedEberlein on the integer lattice converges") {
  const auto family = VanHoveFamily::linear(100.0);
  const Window out{-5.0, 5.0};
  const Measure z = lattice(1.0, 1.0, family.interval(64).expanded(10.0));
  ConvergenceOptions conv;
  conv.tol = 1e-3;
  const auto r = twistedEberlein(z, z, family, out, ProbeSeminorm::grid(out, 0.25, 0.05), conv);
  CHECK(r.report.converged);
  CHECK(r.report.finalN < 64);
  CHECK(r.report.stages.size() == static_cast<std::size_t>(r.report.finalN));
  CHECK_FALSE(r.report.stages.front().distance.has_value());
  const double L = family.halfLength(r.report.finalN);
  // exact pair counts: the lag-j weight is 1 - |j|/(2L), inside 1 +- 2/L for |j| <= 4
  for (int j = -5; j < 5; ++j) {
    CHECK(atomWeight(r.gamma, j).real() == doctest::Approx(1.0 - std::abs(j) / (2.0 * L)));
    if (std::abs(j) <= 4) CHECK(std::abs(atomWeight(r.gamma, j).real() - 1.0) <= 2.0 / L);
  }
}

TEST_CASE("twistedEberlein reports non-convergence") {
  const auto family = VanHoveFamily::linear(10.0);
  const Window out{-5.0, 5.0};
  const Measure z = lattice(1.0, 1.0, family.interval(4).expanded(10.0));
  ConvergenceOptions conv;
  conv.tol = 1e-9;
  conv.nMax = 4;
  const auto r = twistedEberlein(z, z, family, out, ProbeSeminorm::grid(out), conv);
  CHECK_FALSE(r.report.converged);
  CHECK(r.report.finalN == 4);
  CHECK(r.report.stages.size() == 4);
}

TEST_CASE("twistedEberlein validates its inputs") {
  const auto family = VanHoveFamily::linear(10.0);
  const Window out{-5.0, 5.0};
  const Measure z = lattice(1.0, 1.0, {-30.0, 30.0});
  ConvergenceOptions conv;
  conv.nMax = 8;
  CHECK_THROWS_AS(twistedEberlein(z, z, family, out, ProbeSeminorm::grid(out), conv),
                  SupportError);
  conv.tol = 0.0;
  CHECK_THROWS_AS(twistedEberlein(z, z, family, out, ProbeSeminorm::grid(out), conv),
                  ValidationError);
  conv.tol = 1e-3;
  conv.nMax = 1;
  CHECK_THROWS_AS(twistedEberlein(z, z, family, out, ProbeSeminorm::grid(out), conv),
                  ValidationError);
}

TEST_CASE("Bernoulli autocorrelation and cross-correlation") {
  const auto family = VanHoveFamily::linear(100.0);
  const Window out{-6.0, 6.0};
  ConvergenceOptions conv;
  conv.tol = 1e-12;  // run to the last stage
  conv.nMax = 64;
  const Window w = family.interval(64).expanded(10.0);
  const Measure b42 = bernoulliComb(0.5, 1.0, 0.0, 42, w);
  const Measure b43 = bernoulliComb(0.5, 1.0, 0.0, 43, w);
  const auto probe = ProbeSeminorm::grid(out);
  const auto auto42 = twistedEberlein(b42, b42, family, out, probe, conv);
  CHECK(atomWeight(auto42.gamma, 0.0).real() == doctest::Approx(0.5).epsilon(0.04));
  for (int j = 1; j <= 5; ++j) {
    CHECK(std::abs(atomWeight(auto42.gamma, j).real() - 0.25) < 0.02);
    CHECK(std::abs(atomWeight(auto42.gamma, -j).real() - 0.25) < 0.02);
  }
  const auto cross = twistedEberlein(b42, b43, family, out, probe, conv);
  for (int j = -5; j <= 5; ++j) CHECK(std::abs(atomWeight(cross.gamma, j).real() - 0.25) < 0.02);
}

TEST_CASE("polarisation") {
  const Measure mu = testing::atoms({{-1.0, {1.0, 0.5}}, {0.25, 2.0}, {1.5, {0.0, -1.0}},
                                     {2.0, 0.75}, {3.125, {-1.0, 1.0}}});
  const Measure nu = testing::atoms({{-2.0, 1.0}, {-0.5, {0.5, 0.5}}, {0.0, -1.0},
                                     {1.0, {2.0, 0.0}}, {2.75, {0.0, 3.0}}});
  const Window A{-4.0, 4.0};
  const Window out{-6.5, 6.5};
  const auto check = [&](const Measure& x, const Measure& y) {
    const auto parts = polarisationParts(x, y, A, out);
    const Measure combined = polarisationCombine(parts[0], parts[1], parts[2], parts[3]);
    const Measure direct = finiteTwisted(x, y, A, out);
    for (const auto& a : direct.atoms()) {
      const auto w = testing::atomAt(combined, a.position);
      CHECK(std::abs(w.value_or(0.0) - a.weight) <= 1e-12);
    }
    for (const auto& a : combined.atoms()) {
      CHECK(std::abs(a.weight - testing::atomAt(direct, a.position).value_or(0.0)) <= 1e-12);
    }
  };
  check(mu, nu);
  check(mu, mu);
  check(mu, Measure{});
}

TEST_CASE("polarisation rejects mismatched windows") {
  const Measure d0 = testing::atoms({{0.0, 1.0}});
  const Measure a = finiteTwisted(d0, d0, {-1.0, 1.0}, {-1.0, 1.0});
  const Measure b = finiteTwisted(d0, d0, {-1.0, 1.0}, {-2.0, 2.0});
  CHECK_THROWS_AS(polarisationCombine(a, a, a, b), ValidationError);
}
