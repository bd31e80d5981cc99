// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "eberlein/apdiag.hpp"
#include "eberlein/eberlein.hpp"
#include "eberlein/fourier.hpp"
#include "eberlein/generators.hpp"
#include "eberlein/probe.hpp"
#include "verify.hpp"

using namespace eberlein;

namespace {

const double kAlpha = std::sqrt(2.0);

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

// Atom weight at x read through a tent narrow enough to isolate it.
Complex atomAt(const Measure& gamma, double x, double w = 0.1) { return smoothedMass(gamma, x, w); }

EberleinLimit runTo(const Measure& mu, const Measure& nu, const VanHoveFamily& family, int n,
                    const Window& out) {
  ConvergenceOptions conv;
  conv.tol = 1e-14;  // run the full ladder
  conv.nMax = n;
  return twistedEberlein(mu, nu, family, out, ProbeSeminorm::grid(out, 0.25, 0.05), conv);
}

Outcome bernoulliAuto() {
  const auto family = VanHoveFamily::linear(100.0);
  const Window w = family.interval(64).expanded(10.0);
  const Window out{-6.0, 6.0};
  double worst = 0.0;
  bool ok = true;
  for (double p : {0.5, 0.3}) {
    for (std::uint64_t seed : {42u, 43u, 44u, 45u, 46u}) {
      const Measure b = bernoulliComb(p, 1.0, 0.0, seed, w);
      const Measure g = runTo(b, b, family, 64, out).gamma;
      for (int j = -5; j <= 5; ++j) {
        const double expect = j == 0 ? p : p * p;
        const double err = std::abs(atomAt(g, j) - expect);
        worst = std::max(worst, err);
        ok = ok && err <= 0.02;
      }
    }
  }
  return {ok, "p in {0.5, 0.3}, 5 seeds, L=6400: worst |w_j - expected| " + fmt("%.4f", worst)};
}

Outcome bernoulliCross() {
  const auto family = VanHoveFamily::linear(100.0);
  const Window w = family.interval(64).expanded(10.0);
  const Measure b42 = bernoulliComb(0.5, 1.0, 0.0, 42, w);
  const Measure b43 = bernoulliComb(0.5, 1.0, 0.0, 43, w);
  const Measure g = runTo(b42, b43, family, 64, {-6.0, 6.0}).gamma;
  double worst = 0.0;
  for (int j = -5; j <= 5; ++j) worst = std::max(worst, std::abs(atomAt(g, j) - 0.25));
  return {worst <= 0.02, "seeds 42/43, |j|<=5: worst |w_j - 0.25| " + fmt("%.4f", worst)};
}

// Tent probes of width 1 read a comb of weight c at integers as level c, the
// same as a density c; the atom at 0 is its excess over that level.
Outcome signedBernoulli() {
  const auto family = VanHoveFamily::linear(100.0);
  const Window w = family.interval(64).expanded(10.0);
  const Window out{-12.0, 12.0};
  bool ok = true;
  std::string detail;
  for (double p : {0.5, 0.75}) {
    const Measure b = bernoulliComb(p, 1.0, -1.0, 42, w);
    const Measure g = runTo(b, b, family, 64, out).gamma;
    const auto probe = ProbeSeminorm::grid({2.0, 11.0}, 1.0, 0.25);
    double background = 0.0;
    for (auto v : probeEval(g, probe)) background += v.real();
    background /= static_cast<double>(probe.centers.size());
    double off = 0.0;
    for (int j : {-3, -2, 2, 3}) off += atomAt(g, j, 0.5).real();
    const double atom = atomAt(g, 0.0, 0.5).real() - off / 4.0;
    const double b2 = (2.0 * p - 1.0) * (2.0 * p - 1.0);
    ok = ok && std::abs(background - b2) <= 0.02 && std::abs(atom - 4.0 * p * (1.0 - p)) <= 0.02;
    detail += "p=" + fmt("%.2f", p) + " background " + fmt("%.4f", background) + " atom " +
              fmt("%.4f", atom) + "; ";
  }
  return {ok, detail};
}

Outcome incommensurateClosedForm() {
  const auto family = VanHoveFamily::linear(100.0);
  const Window w = family.interval(32).expanded(10.0);
  const Measure mu = incommensurate(kAlpha, w);
  const Window out{-3.0, 3.0};
  const Window A = family.interval(32);
  const Measure g = finiteTwisted(mu, mu, A, {-3.5, 3.5});
  // background: narrow tents away from Z and alpha Z
  const double tw = 0.05;
  double bg = 0.0;
  int nbg = 0;
  for (double c = out.lo + 0.1; c < out.hi - 0.1; c += 0.01) {
    const double dz = std::abs(c - std::nearbyint(c));
    const double da = std::abs(c - kAlpha * std::nearbyint(c / kAlpha));
    if (dz > 2 * tw && da > 2 * tw) {
      bg += smoothedMass(g, c, tw).real() / tw;
      ++nbg;
    }
  }
  bg /= nbg;
  double worstZ = 0.0, worstA = 0.0;
  // at 0 the two lattices meet and the weights add
  const double origin = smoothedMass(g, 0.0, tw).real() - bg * tw;
  for (int j = -3; j <= 2; ++j) {
    if (j == 0) continue;
    worstZ = std::max(worstZ, std::abs(smoothedMass(g, j, tw).real() - bg * tw - 1.0));
  }
  for (int m = -2; m <= 2; ++m) {
    if (m == 0) continue;
    worstA = std::max(worstA, std::abs(smoothedMass(g, m * kAlpha, tw).real() - bg * tw -
                                       1.0 / kAlpha));
  }
  const bool ok = worstZ <= 0.01 && worstA <= 0.01 && std::abs(bg - 2.0 / kAlpha) <= 0.03 &&
                  std::abs(origin - 1.0 - 1.0 / kAlpha) <= 0.02;
  return {ok, "L=3200: background " + fmt("%.4f", bg) + ", atom at 0 " + fmt("%.4f", origin) +
                  ", worst Z atom err " + fmt("%.4f", worstZ) + ", worst alpha atom err " +
                  fmt("%.4f", worstA)};
}

Outcome shrinkingBumps() {
  const auto family = VanHoveFamily::linear(100.0);
  const Window w = family.interval(16).expanded(5.0);
  const Measure mu = shrinkingBumpDensity(w);
  const Window out{-3.0, 3.0};
  const auto probe = ProbeSeminorm::grid(out, 0.25, 0.05);
  const auto r = runTo(mu, mu, family, 16, out);
  const double d = probeDistance(r.gamma, lattice(1.0, 1.0, out), probe);
  return {d < 0.05 && r.report.finalN == 16,
          "L=" + fmt("%.0f", family.halfLength(r.report.finalN)) + ": probe distance to delta_Z " +
              fmt("%.5f", d)};
}

Outcome characterLemma() {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    std::vector<Atom> atoms;
    const int n = 1 + static_cast<int>(rng() % 30);
    for (int j = 0; j < n; ++j) atoms.push_back({20.0 * u(rng), Complex{u(rng), u(rng)}});
    std::vector<DensitySignal> density;
    if (i % 2 == 0) {
      DensitySignal d{-10.0 + u(rng), 0.125, {}};
      for (int j = 0; j < 80; ++j) d.samples.push_back({u(rng), u(rng)});
      density.push_back(std::move(d));
    }
    const Measure m(std::move(atoms), std::move(density));
    const double ts[] = {40.0 * u(rng)};
    worst = std::max(worst, characterLemmaResidual(m, 5.0 * u(rng), {-21.0, 21.0}, ts));
  }
  return {worst <= 1e-12, "100 triples: worst residual " + fmt("%.2e", worst)};
}

Outcome consistentPhases() {
  const auto family = VanHoveFamily::linear(100.0);
  const Window A = family.interval(32);
  const auto coeffFamily = VanHoveFamily::geometric(12.5, 2.0);
  double worst = 0.0;
  std::string detail;
  auto run = [&](const std::string& name, const Measure& mu, const Window& out,
                 const std::vector<double>& freqs) {
    const Measure g = finiteTwistedAlt(mu, mu, A, out, LimitForm::rightOnly);
    double w = 0.0;
    for (const auto& row : cppCheck(mu, mu, g, freqs, coeffFamily, 1e-6, 16)) {
      w = std::max(w, row.defect);
    }
    worst = std::max(worst, w);
    detail += name + " " + fmt("%.2e", w) + "; ";
  };
  const Window big = A.expanded(200.0);
  run("delta_Z", lattice(1.0, 1.0, big), {-200.0, 200.0}, {-2.0, -1.0, 0.0, 0.5, 1.0, 2.0});
  run("delta_Z+delta_aZ", incommensurate(kAlpha, big), {-200.0, 200.0},
      {-1.0, -1.0 / kAlpha, 0.0, 1.0 / kAlpha, 2.0 / kAlpha, 1.0});
  const auto P = TrigPolynomial::make({{0.5, {1.0, 0.0}}, {1.5, {0.0, 0.5}}});
  run("trig", trigDensity(P, A.expanded(200.0), 0.02), {-25.0, 25.0}, {0.5, 1.5, 1.0, 0.0});
  return {worst < 5e-3, detail + "L=3200"};
}

Outcome identitySuite() {
  const auto results = verify::runSuite(500, 20240601);
  int failed = 0;
  std::string names;
  for (const auto& r : results) {
    if (!r.passed()) {
      ++failed;
      names += " " + r.name;
    }
  }
  return {failed == 0, std::to_string(results.size()) + " laws x 500 cases, " +
                           std::to_string(failed) + " failed" + names};
}

Outcome boundaryDecay() {
  const Window out{-20.0, 20.0};
  const auto probe = ProbeSeminorm::grid(out, 1.0, 0.05);
  const Window w{-3300.0, 3300.0};
  const Measure z = lattice(1.0, 1.0, w);
  const Measure b = bernoulliComb(0.5, 1.0, 0.0, 42, w);
  const Measure a = incommensurate(kAlpha, w, 0.0, 1.0);
  bool ok = true;
  std::string detail;
  auto ladder = [&](const std::string& name, const Measure& mu, const Measure& nu) {
    double prev = 0.0;
    detail += name + " ratios";
    for (double L : {400.0, 800.0, 1600.0, 3200.0}) {
      const double d = boundaryDefect(mu, nu, {-L, L}, probe);
      if (prev > 0.0) {
        const double ratio = d / prev;
        ok = ok && std::abs(ratio - 0.5) <= 0.05;
        detail += " " + fmt("%.3f", ratio);
      }
      prev = d;
    }
    detail += "; ";
  };
  ladder("(Z,Z)", z, z);
  ladder("(Bernoulli,aZ)", b, a);
  return {ok, detail};
}

Outcome threeForms() {
  const Window out{-5.0, 5.0};
  const auto probe = ProbeSeminorm::grid(out, 0.25, 0.05);
  const Window w{-3300.0, 3300.0};
  const Measure mu = lattice(1.0, 1.0, w);
  const Measure nu = incommensurate(kAlpha, w);
  std::vector<double> cs;
  std::string detail = "C = L*max distance:";
  for (double L : {400.0, 800.0, 1600.0, 3200.0}) {
    const Window A{-L, L};
    const Measure both = finiteTwistedAlt(mu, nu, A, out, LimitForm::both);
    const Measure left = finiteTwistedAlt(mu, nu, A, out, LimitForm::leftOnly);
    const Measure right = finiteTwistedAlt(mu, nu, A, out, LimitForm::rightOnly);
    const double d = std::max({probeDistance(both, left, probe), probeDistance(both, right, probe),
                               probeDistance(left, right, probe)});
    cs.push_back(L * d);
    detail += " " + fmt("%.3f", L * d);
  }
  const auto [lo, hi] = std::minmax_element(cs.begin(), cs.end());
  return {*lo > 0.0 && *hi <= 1.5 * *lo, detail};
}

Outcome sapConsequence() {
  const auto family = VanHoveFamily::linear(100.0);
  const Window w = family.interval(32).expanded(200.0);
  const Measure z = lattice(1.0, 1.0, w);
  const Measure b = bernoulliComb(0.5, 1.0, 0.0, 42, w);
  const Measure g = finiteTwisted(z, b, family.interval(32), {-160.0, 160.0});
  ScanParams params;
  params.tentWidth = 0.25;
  const auto scan = almostPeriodScan(g, 0.05, NormKind::smoothedSup, params, {-50.0, 50.0}, 0.25);
  ScanParams kp;
  kp.kLen = 1.0;
  const Measure bs = bernoulliComb(0.5, 1.0, 0.0, 42, {-200.0, 200.0});
  const auto bscan = almostPeriodScan(bs, 0.5, NormKind::kNorm, kp, {-50.0, 50.0}, 0.25);
  const bool trivial = bscan.periods.size() == 1 && bscan.periods[0] == 0.0;
  return {scan.maxGap <= 1.5 && trivial,
          "gamma maxGap " + fmt("%.2f", scan.maxGap) + " (" +
              std::to_string(scan.periods.size()) + " periods); Bernoulli kNorm periods " +
              std::to_string(bscan.periods.size())};
}

Outcome normCounterexample() {
  const Measure g = incommensurateAutocorrelation(kAlpha, {-60.0, 60.0});
  const double bound =
      std::min({1.0 / kAlpha, 1.0, 1.0 + 1.0 / kAlpha, std::abs(1.0 - 1.0 / kAlpha)});
  double worst = 1e9;
  for (double t : {1e-3 * std::sqrt(3.0), 0.01 * std::sqrt(5.0), 0.1 * M_PI, 0.5 * std::sqrt(7.0),
                   -0.05 * std::sqrt(11.0)}) {
    worst = std::min(worst, kNormDistance(g, translate(g, t), 1.0, {-10.0, 10.0}));
  }
  return {worst >= bound - 1e-9,
          "smallest distance " + fmt("%.6f", worst) + " vs bound " + fmt("%.6f", bound)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"Bernoulli autocorrelation", bernoulliAuto},
      {"Bernoulli cross-correlation", bernoulliCross},
      {"signed Bernoulli autocorrelation", signedBernoulli},
      {"incommensurate superposition", incommensurateClosedForm},
      {"shrinking bumps", shrinkingBumps},
      {"character lemma", characterLemma},
      {"consistent phases", consistentPhases},
      {"algebraic identities", identitySuite},
      {"boundary decay", boundaryDecay},
      {"three limit forms", threeForms},
      {"almost periods", sapConsequence},
      {"norm counterexample", normCounterexample},
  };
  int failed = 0;
  const auto start = std::chrono::steady_clock::now();
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) ++failed;
    std::printf("%s %2zu %s: %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first.c_str(), o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  const double total =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%d of %zu criteria passed in %.1fs\n", static_cast<int>(criteria.size()) - failed,
              criteria.size(), total);
  return failed == 0 ? 0 : 1;
}
