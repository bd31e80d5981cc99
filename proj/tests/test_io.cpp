#include <doctest.h>

#include "eberlein/errors.hpp"
#include "eberlein/generators.hpp"
#include "eberlein/io.hpp"
#include "helpers.hpp"

using namespace eberlein;

TEST_CASE("measure JSON round trip is exact") {
  const Measure m({{-0.1, {1.0 / 3.0, -2.0}}, {std::sqrt(2.0), 1e-300}},
                  {DensitySignal{-1.0, 0.1, {{0.1, 0.2}, {std::numbers::pi, 0.0}}}},
                  Window{-2.0, 2.0});
  const Measure back = io::measureFromJson(io::Json::parse(io::toJson(m).dump()));
  CHECK(std::equal(back.atoms().begin(), back.atoms().end(), m.atoms().begin(), m.atoms().end()));
  CHECK(back.density() == m.density());
  CHECK(back.sampledOn() == m.sampledOn());
  CHECK(io::toJson(back).dump() == io::toJson(m).dump());
}

TEST_CASE("measure JSON accepts a single density object and rejects junk") {
  const auto j = io::Json::parse(
      R"({"atoms": [[0, 1, 0]], "density": {"origin": 0, "step": 0.5, "samples": [[1, 0]]}})");
  const Measure m = io::measureFromJson(j);
  CHECK(m.compact());
  CHECK(m.density().size() == 1);
  CHECK(io::measureFromJson(io::Json::parse(R"({"atoms": [[0, 1]]})")).atoms()[0].weight == Complex(1.0));
  CHECK_THROWS_AS(io::measureFromJson(io::Json::parse(R"({"atoms": [[0]]})")), ValidationError);
  CHECK_THROWS_AS(io::measureFromJson(io::Json::parse(R"({"atoms": 3})")), ValidationError);
  CHECK_THROWS_AS(io::measureFromJson(io::Json::parse(R"([1, 2])")), ValidationError);
}

TEST_CASE("CSV carries 17 significant digits") {
  const Measure m = testing::atoms({{1.0 / 3.0, {0.1, 0.0}}});
  const std::string csv = io::toCsv(m);
  CHECK(csv.rfind("kind,position,step,re,im\n", 0) == 0);
  CHECK(csv.find("0.33333333333333331") != std::string::npos);
  CHECK(csv.find("0.10000000000000001") != std::string::npos);
}

TEST_CASE("window parsing") {
  CHECK(io::parseWindow("-100:100") == Window{-100.0, 100.0});
  CHECK(io::parseWindow("-5.5:-1") == Window{-5.5, -1.0});
  CHECK_THROWS_AS(io::parseWindow("3:1"), ValidationError);
  CHECK_THROWS_AS(io::parseWindow("abc"), ValidationError);
  CHECK_THROWS_AS(io::parseWindow("1:2:3"), ValidationError);
}

TEST_CASE("frequency sets") {
  CHECK(io::parseFrequencySet("int:-2..2") == std::vector<double>{-2, -1, 0, 1, 2});
  const auto a = io::parseFrequencySet("alpha:1.4142135623730951:-1..1");
  REQUIRE(a.size() == 3);
  CHECK(a[2] == doctest::Approx(1.0 / std::sqrt(2.0)));
  const auto u = io::parseFrequencySet("union(int:0..1,0.5,1)");
  CHECK(u == std::vector<double>{0.0, 0.5, 1.0});
  CHECK(io::parseFrequencySet("0.25,-1") == std::vector<double>{-1.0, 0.25});
  CHECK_THROWS_AS(io::parseFrequencySet("int:3..1"), ValidationError);
  CHECK_THROWS_AS(io::parseFrequencySet("union(int:0..1"), ValidationError);
  CHECK_THROWS_AS(io::parseFrequencySet(""), ValidationError);
}

TEST_CASE("generated JSON is deterministic") {
  const auto spec = GeneratorSpec::parse("bernoulli", "0.5:1:-1", {-50.0, 50.0}, 123);
  CHECK(io::toJson(spec.generate()).dump() == io::toJson(spec.generate()).dump());
}
