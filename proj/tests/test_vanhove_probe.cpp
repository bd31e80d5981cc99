#include <doctest.h>

#include "eberlein/errors.hpp"
#include "eberlein/probe.hpp"
#include "eberlein/vanhove.hpp"
#include "helpers.hpp"

using namespace eberlein;

TEST_CASE("van Hove intervals") {
  CHECK(VanHoveFamily::linear(100.0).interval(3) == Window{-300.0, 300.0});
  CHECK(VanHoveFamily::geometric(10.0, 2.0).interval(4) == Window{-160.0, 160.0});
  CHECK(VanHoveFamily::linear(5.0, false).interval(2) == Window{0.0, 10.0});
  CHECK_THROWS_AS(VanHoveFamily::linear(100.0).interval(0), ValidationError);
}

TEST_CASE("boundary ratio of centered intervals") {
  const auto f = VanHoveFamily::linear(100.0);
  for (int n = 1; n <= 8; ++n) {
    const double L = f.halfLength(n);
    CHECK(f.boundaryRatio(n, 1.0) == doctest::Approx(2.0 / L));
    CHECK(f.boundaryRatio(n, 0.0) == 0.0);
    if (n > 1) CHECK(f.boundaryRatio(n, 1.0) < f.boundaryRatio(n - 1, 1.0));
  }
}

TEST_CASE("family specs round-trip") {
  for (const char* s : {"linear:100", "geo:12.5:2", "linear:3:uncentered"}) {
    const auto f = VanHoveFamily::parse(s);
    CHECK(VanHoveFamily::parse(f.toString()).interval(3) == f.interval(3));
  }
  CHECK_THROWS_AS(VanHoveFamily::parse("linear:-1"), ValidationError);
  CHECK_THROWS_AS(VanHoveFamily::parse("geo:10:1"), ValidationError);
  CHECK_THROWS_AS(VanHoveFamily::parse("cubic:3"), ValidationError);
}

TEST_CASE("largest covered stage") {
  const auto f = VanHoveFamily::linear(100.0);
  CHECK(f.largestCoveredStage({-350.0, 350.0}, 64) == 3);
  CHECK(f.largestCoveredStage({-50.0, 50.0}, 64) == 0);
  CHECK(f.largestCoveredStage({-1e6, 1e6}, 8) == 8);
}

TEST_CASE("probe on a single atom") {
  const Measure d0 = testing::atoms({{0.0, 1.0}});
  ProbeSeminorm p;
  p.tentWidth = 1.0;
  p.centers = {0.0, 1.0, -1.5, 0.5};
  const auto v = probeEval(d0, p);
  CHECK(v[0] == Complex(1.0));
  CHECK(v[1] == Complex(0.0));
  CHECK(v[2] == Complex(0.0));
  CHECK(v[3].real() == doctest::Approx(0.5));
}

TEST_CASE("probe of Lebesgue is one everywhere") {
  const Measure leb({}, {DensitySignal{-10.0, 0.1, std::vector<Complex>(200, 1.0)}},
                    Window{-10.0, 10.0});
  const auto p = ProbeSeminorm::grid({-5.0, 5.0}, 0.25, 0.05);
  for (const auto& v : probeEval(leb, p)) CHECK(v.real() == doctest::Approx(1.0).epsilon(1e-12));
  const auto q = ProbeSeminorm::grid({-5.0, 5.0}, 0.33, 0.07);
  for (const auto& v : probeEval(leb, q)) CHECK(v.real() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("probe grid stays inside the window") {
  const auto p = ProbeSeminorm::grid({-5.0, 5.0}, 0.25, 0.05);
  CHECK(p.centers.front() == doctest::Approx(-4.75));
  CHECK(p.centers.back() <= 4.75);
  CHECK(p.centers.size() == 191);
  CHECK(p.reach().lo == doctest::Approx(-5.0));
  CHECK(p.reach().hi >= 5.0);
  CHECK_THROWS_AS(ProbeSeminorm::grid({0.0, 0.4}, 0.25, 0.05), ValidationError);
}

TEST_CASE("probe reading outside a view throws") {
  const Measure view({{0.0, 1.0}}, {}, Window{-1.0, 1.0});
  ProbeSeminorm p;
  p.tentWidth = 0.5;
  p.centers = {0.8};
  CHECK_THROWS_AS(probeEval(view, p), SupportError);
}

TEST_CASE("smoothed mass of an isolated atom is its weight") {
  const Measure m = testing::atoms({{0.3, {2.0, -1.0}}, {5.0, 1.0}});
  CHECK(std::abs(smoothedMass(m, 0.3, 0.5) - Complex(2.0, -1.0)) < 1e-15);
}
