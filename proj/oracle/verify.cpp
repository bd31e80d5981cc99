#include "verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "eberlein/convolution.hpp"
#include "eberlein/eberlein.hpp"
#include "eberlein/fourier.hpp"
#include "eberlein/apdiag.hpp"
#include "eberlein/probe.hpp"
#include "oracle.hpp"

namespace eberlein::verify {

namespace {

constexpr double kFine = 1.0 / 1048576.0;  // 2^-20: every position is a multiple
constexpr double kInf = std::numeric_limits<double>::infinity();

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

int integer(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

Complex randomWeight(std::mt19937_64& rng) {
  const double re = uniform(rng, -1.0, 1.0);
  if (integer(rng, 0, 4) == 0) return {re, 0.0};
  return {re, uniform(rng, -1.0, 1.0)};
}

Measure randomMeasure(std::mt19937_64& rng, double L, bool withDensity) {
  std::vector<Atom> atoms;
  const int n = integer(rng, 0, 6);
  for (int i = 0; i < n; ++i) {
    double x;
    if (integer(rng, 0, 9) < 7) {
      x = integer(rng, static_cast<int>(-8 * (L + 1)), static_cast<int>(8 * (L + 1)) - 1) / 8.0;
    } else {
      x = std::floor(uniform(rng, -L - 1.0, L + 1.0) / kFine) * kFine;
    }
    atoms.push_back({x, randomWeight(rng)});
  }
  std::vector<DensitySignal> density;
  if (withDensity && integer(rng, 0, 9) < 6) {
    DensitySignal d;
    d.step = integer(rng, 0, 1) == 0 ? 0.25 : 0.5;
    d.origin = integer(rng, static_cast<int>(-8 * (L + 1)), static_cast<int>(8 * L)) / 8.0;
    const int m = integer(rng, 1, 8);
    for (int i = 0; i < m; ++i) d.samples.push_back(randomWeight(rng));
    density.push_back(std::move(d));
  }
  return Measure(std::move(atoms), std::move(density));
}

double scaleOf(const Measure& m) {
  double s = 1.0;
  for (const auto& a : m.atoms()) s = std::max(s, std::abs(a.weight));
  for (const auto& d : m.density()) {
    for (const auto& v : d.samples) s = std::max(s, std::abs(v));
  }
  return s;
}

ConvolutionOptions fixedGrid() { return ConvolutionOptions{0.125}; }

// Largest difference of tent-smoothed values over the interior of `out`.
double smoothedDistance(const Measure& x, const Measure& y, const Window& out) {
  const auto probe = ProbeSeminorm::grid(out, 0.5, 0.05);
  return probeDistance(x, y, probe);
}

double measureDistance(const Measure& x, const Measure& y, const Window& out) {
  return std::max(atomDistance(x, y), smoothedDistance(x, y, out));
}

double bitwise(const Measure& x, const Measure& y) {
  if (atomsIdentical(x, y) != 0.0) return kInf;
  return x.density() == y.density() ? 0.0 : kInf;
}

Measure withoutAtom(const Measure& m, std::size_t skip) {
  std::vector<Atom> atoms;
  for (std::size_t i = 0; i < m.atoms().size(); ++i) {
    if (i != skip) atoms.push_back(m.atoms()[i]);
  }
  return Measure(std::move(atoms), m.density(), m.sampledOn());
}

Measure withoutDensity(const Measure& m) {
  return Measure(std::vector<Atom>(m.atoms().begin(), m.atoms().end()), {}, m.sampledOn());
}

}  // namespace

double atomDistance(const Measure& x, const Measure& y) {
  const auto ax = x.atoms();
  const auto ay = y.atoms();
  std::size_t i = 0, j = 0;
  double worst = 0.0;
  while (i < ax.size() || j < ay.size()) {
    if (i < ax.size() && j < ay.size() &&
        std::abs(ax[i].position - ay[j].position) <=
            coalescingTolerance(ax[i].position, ay[j].position)) {
      worst = std::max(worst, std::abs(ax[i].weight - ay[j].weight));
      ++i;
      ++j;
    } else if (j >= ay.size() || (i < ax.size() && ax[i].position < ay[j].position)) {
      worst = std::max(worst, std::abs(ax[i++].weight));
    } else {
      worst = std::max(worst, std::abs(ay[j++].weight));
    }
  }
  return worst;
}

double atomsIdentical(const Measure& x, const Measure& y) {
  const auto ax = x.atoms();
  const auto ay = y.atoms();
  if (ax.size() != ay.size()) return kInf;
  for (std::size_t i = 0; i < ax.size(); ++i) {
    if (!(ax[i] == ay[i])) return kInf;
  }
  return 0.0;
}

Instance randomInstance(std::mt19937_64& rng, bool withDensity) {
  Instance in;
  const double L = integer(rng, 2, 6);
  in.A = Window{-L, L};
  // odd multiples of 2^-22 never equal a difference of two positions
  const double R = integer(rng, 3, static_cast<int>(4 * L) - 2) / 2.0;
  const double nudge = (2 * integer(rng, 0, 15) + 1) * kFine / 4.0;
  in.out = Window{-R - nudge, R + nudge};
  in.mu = randomMeasure(rng, L, withDensity);
  in.nu = randomMeasure(rng, L, withDensity);
  in.sigma = randomMeasure(rng, L, withDensity);
  in.a = randomWeight(rng);
  in.b = randomWeight(rng);
  in.t = integer(rng, -32, 32) / 8.0;
  switch (integer(rng, 0, 2)) {
    case 0: in.k = integer(rng, -6, 6) / 2.0; break;
    default: in.k = uniform(rng, -3.0, 3.0); break;
  }
  in.withDensity = withDensity;
  return in;
}

std::string describe(const Instance& in) {
  std::ostringstream os;
  os.precision(17);
  auto dump = [&](const char* name, const Measure& m) {
    os << name << " atoms{";
    for (const auto& a : m.atoms()) os << ' ' << a.position << ':' << a.weight;
    os << " }";
    for (const auto& d : m.density()) {
      os << " density(origin " << d.origin << ", step " << d.step << ", " << d.size() << " cells)";
    }
    os << "; ";
  };
  dump("mu", in.mu);
  dump("nu", in.nu);
  dump("sigma", in.sigma);
  os << "A [" << in.A.lo << ',' << in.A.hi << ") out [" << in.out.lo << ',' << in.out.hi
     << ") a " << in.a << " b " << in.b << " t " << in.t << " k " << in.k;
  return os.str();
}

std::vector<Instance> shrinkCandidates(const Instance& in) {
  std::vector<Instance> out;
  auto vary = [&](Measure Instance::*field) {
    const Measure& m = in.*field;
    for (std::size_t i = 0; i < m.atoms().size(); ++i) {
      Instance c = in;
      c.*field = withoutAtom(m, i);
      out.push_back(std::move(c));
    }
    if (!m.density().empty()) {
      Instance c = in;
      c.*field = withoutDensity(m);
      out.push_back(std::move(c));
    }
  };
  vary(&Instance::mu);
  vary(&Instance::nu);
  vary(&Instance::sigma);
  return out;
}

std::vector<Law> algebraicLaws() {
  std::vector<Law> laws;

  laws.push_back({"conjugate symmetry at finite stage (atoms, exact)", 0.0, false,
                  [](const Instance& in) {
                    const Measure lhs = finiteTwisted(in.nu, in.mu, in.A, in.out);
                    const Measure rhs =
                        reflectTilde(finiteTwisted(in.mu, in.nu, in.A, in.out.negated()));
                    return atomsIdentical(lhs, rhs);
                  }});

  laws.push_back({"linearity in the first slot", 1e-12, true, [](const Instance& in) {
                    const auto opts = fixedGrid();
                    const Measure lhs =
                        finiteTwisted(addScaled(in.mu, in.sigma, in.a, in.b), in.nu, in.A, in.out, opts);
                    const Measure rhs = addScaled(finiteTwisted(in.mu, in.nu, in.A, in.out, opts),
                                                  finiteTwisted(in.sigma, in.nu, in.A, in.out, opts),
                                                  in.a, in.b);
                    return measureDistance(lhs, rhs, in.out) / scaleOf(lhs);
                  }});

  laws.push_back({"conjugate linearity in the second slot", 1e-12, true, [](const Instance& in) {
                    const auto opts = fixedGrid();
                    const Measure lhs =
                        finiteTwisted(in.mu, addScaled(in.nu, in.sigma, in.a, in.b), in.A, in.out, opts);
                    const Measure rhs = addScaled(finiteTwisted(in.mu, in.nu, in.A, in.out, opts),
                                                  finiteTwisted(in.mu, in.sigma, in.A, in.out, opts),
                                                  std::conj(in.a), std::conj(in.b));
                    return measureDistance(lhs, rhs, in.out) / scaleOf(lhs);
                  }});

  laws.push_back({"bilinearity of convolveFinite", 1e-12, true, [](const Instance& in) {
                    const auto opts = fixedGrid();
                    const Measure m = restrict(in.mu, in.A), s = restrict(in.sigma, in.A),
                                  n = restrict(in.nu, in.A);
                    const Measure lhs = convolveFinite(addScaled(m, s, in.a, in.b), n, in.out, opts);
                    const Measure rhs = addScaled(convolveFinite(m, n, in.out, opts),
                                                  convolveFinite(s, n, in.out, opts), in.a, in.b);
                    return measureDistance(lhs, rhs, in.out) / scaleOf(lhs);
                  }});

  laws.push_back({"polarisation identity", 1e-10, true, [](const Instance& in) {
                    const auto opts = fixedGrid();
                    const auto parts = polarisationParts(in.mu, in.nu, in.A, in.out, opts);
                    const Measure lhs = polarisationCombine(parts[0], parts[1], parts[2], parts[3]);
                    const Measure rhs = finiteTwisted(in.mu, in.nu, in.A, in.out, opts);
                    return measureDistance(lhs, rhs, in.out) / scaleOf(rhs);
                  }});

  laws.push_back({"oracle agreement: twisted convolution atoms", 1e-12, true,
                  [](const Instance& in) {
                    const Measure engine = finiteTwisted(in.mu, in.nu, in.A, in.out);
                    const Measure brute = oracle::bruteTwisted(in.mu, in.nu, in.A, in.out);
                    return atomDistance(engine, brute) / scaleOf(engine);
                  }});

  laws.push_back({"oracle agreement: twisted convolution densities (smoothed)", 1.0, true,
                  [](const Instance& in) {
                    const auto opts = fixedGrid();
                    const Measure engine = finiteTwisted(in.mu, in.nu, in.A, in.out, opts);
                    const Measure brute = oracle::bruteTwisted(in.mu, in.nu, in.A, in.out, 0.125);
                    // moving mass m by at most d changes a width-w tent probe by m d / w^2
                    double hMu = 0.0, hNu = 0.0;
                    for (const auto& d : in.mu.density()) hMu = std::max(hMu, d.step);
                    for (const auto& d : in.nu.density()) hNu = std::max(hNu, d.step);
                    const Measure mA = restrict(in.mu, in.A), nA = restrict(in.nu, in.A);
                    double massMu = 0.0, massNu = 0.0;
                    for (const auto& a : mA.atoms()) massMu += std::abs(a.weight);
                    for (const auto& d : mA.density()) for (const auto& v : d.samples) massMu += std::abs(v) * d.step;
                    for (const auto& a : nA.atoms()) massNu += std::abs(a.weight);
                    for (const auto& d : nA.density()) for (const auto& v : d.samples) massNu += std::abs(v) * d.step;
                    const double shift = 0.5 * hMu + 0.5 * hNu + 0.125;
                    const double bound = massMu * massNu / in.A.length() * shift / 0.25 + 1e-12;
                    return smoothedDistance(engine, brute, in.out) / bound;
                  }});

  laws.push_back({"oracle agreement: Fourier-Bohr coefficient", 1e-9, true,
                  [](const Instance& in) {
                    const Complex engine = fbCoefficient(in.mu, in.k, in.A);
                    const Complex brute = oracle::bruteFB(in.mu, in.k, in.A);
                    return std::abs(engine - brute) / std::max(std::abs(brute), 1e-3 * scaleOf(in.mu));
                  }});

  laws.push_back({"character lemma at finite volume", 1e-12, true, [](const Instance& in) {
                    const double ts[] = {in.t, -in.t + 0.3, 1.7, -2.45};
                    return characterLemmaResidual(in.mu, in.k, in.A, ts) / scaleOf(in.mu);
                  }});

  laws.push_back({"Fourier-Bohr linearity", 1e-12, true, [](const Instance& in) {
                    const Complex lhs = fbCoefficient(addScaled(in.mu, in.sigma, in.a, in.b), in.k, in.A);
                    const Complex rhs = in.a * fbCoefficient(in.mu, in.k, in.A) +
                                        in.b * fbCoefficient(in.sigma, in.k, in.A);
                    return std::abs(lhs - rhs) / std::max(scaleOf(in.mu), scaleOf(in.sigma));
                  }});

  laws.push_back({"reflection involutions (exact)", 0.0, true, [](const Instance& in) {
                    return std::max({bitwise(reflectTilde(reflectTilde(in.mu)), in.mu),
                                     bitwise(reflectDagger(reflectDagger(in.mu)), in.mu),
                                     bitwise(reflectTilde(translate(in.mu, in.t)),
                                             translate(reflectTilde(in.mu), -in.t))});
                  }});

  laws.push_back({"translation round trip (exact)", 0.0, true, [](const Instance& in) {
                    return bitwise(translate(translate(in.mu, in.t), -in.t), in.mu);
                  }});

  laws.push_back({"reflection commutes with convolution (atoms, exact)", 0.0, false,
                  [](const Instance& in) {
                    const Measure m = restrict(in.mu, in.A), n = restrict(in.nu, in.A);
                    const Measure lhs = reflectTilde(convolveFinite(m, n, in.out));
                    const Measure rhs =
                        convolveFinite(reflectTilde(m), reflectTilde(n), in.out.negated());
                    return atomsIdentical(lhs, rhs);
                  }});

  laws.push_back({"translation covariance of convolution", 1e-12, true, [](const Instance& in) {
                    const Measure m = restrict(in.mu, in.A), n = restrict(in.nu, in.A);
                    const Measure lhs = translate(convolveFinite(m, n, in.out), in.t);
                    const Measure rhs =
                        convolveFinite(translate(m, in.t), n, in.out.shifted(in.t));
                    return atomDistance(lhs, rhs) / scaleOf(lhs);
                  }});

  laws.push_back({"one-sided translation covariance (atoms, exact)", 0.0, false,
                  [](const Instance& in) {
                    // keep out + t inside the reachable differences A - A
                    const double room = 2.0 * in.A.hi - in.out.hi;
                    const double t = std::copysign(std::min(std::abs(in.t), std::floor(room * 8.0) / 8.0), in.t);
                    const Measure lhs = finiteTwistedAlt(in.mu, translate(in.nu, t), in.A,
                                                         in.out, LimitForm::rightOnly);
                    const Measure rhs = translate(
                        finiteTwistedAlt(in.mu, in.nu, in.A, in.out.shifted(t), LimitForm::rightOnly),
                        -t);
                    return atomsIdentical(lhs, rhs);
                  }});

  laws.push_back({"untwisted form through reflection (exact)", 0.0, true, [](const Instance& in) {
                    return bitwise(finiteEberlein(in.mu, reflectTilde(in.nu), in.A, in.out),
                                   finiteTwisted(in.mu, in.nu, in.A, in.out));
                  }});

  laws.push_back({"boundary defect equals the one-sided minus two-sided gap", 1e-12, true,
                  [](const Instance& in) {
                    const auto opts = fixedGrid();
                    const auto probe = ProbeSeminorm::grid(in.out, 0.5, 0.05);
                    const double defect = boundaryDefect(in.mu, in.nu, in.A, probe, opts);
                    const Window reach = probe.reach();
                    const Measure one =
                        finiteTwistedAlt(in.mu, in.nu, in.A, reach, LimitForm::leftOnly, opts);
                    const Measure two =
                        finiteTwistedAlt(in.mu, in.nu, in.A, reach, LimitForm::both, opts);
                    return std::abs(defect - probeDistance(one, two, probe)) / scaleOf(two);
                  }});

  laws.push_back({"kNorm distance is symmetric and satisfies the triangle inequality", 1e-12, true,
                  [](const Instance& in) {
                    const Window search = in.A.expanded(2.0);
                    const double xy = kNormDistance(in.mu, in.nu, 1.0, search);
                    const double yx = kNormDistance(in.nu, in.mu, 1.0, search);
                    const double xz = kNormDistance(in.mu, in.sigma, 1.0, search);
                    const double zy = kNormDistance(in.sigma, in.nu, 1.0, search);
                    return std::max(std::abs(xy - yx), xy - (xz + zy));
                  }});

  return laws;
}

CheckResult runLaw(const Law& law, int cases, std::uint64_t seed) {
  CheckResult r;
  r.name = law.name;
  r.tolerance = law.tolerance;
  std::mt19937_64 rng(seed);
  auto evaluate = [&](const Instance& in, std::string* error) {
    try {
      return law.violation(in);
    } catch (const std::exception& e) {
      if (error) *error = e.what();
      return kInf;
    }
  };
  for (int c = 0; c < cases; ++c) {
    // density instances for every other case of laws that support them
    const Instance in = randomInstance(rng, law.needsDensity && c % 2 == 1);
    ++r.cases;
    const double v = evaluate(in, nullptr);
    if (!(v <= law.tolerance)) {
      ++r.failures;
      r.worst = std::max(r.worst, v);
      if (r.counterexample.empty()) {
        Instance small = in;
        bool progress = true;
        while (progress) {
          progress = false;
          for (const auto& cand : shrinkCandidates(small)) {
            if (!(evaluate(cand, nullptr) <= law.tolerance)) {
              small = cand;
              progress = true;
              break;
            }
          }
        }
        std::string error;
        const double sv = evaluate(small, &error);
        std::ostringstream os;
        os << describe(small) << " => violation " << sv;
        if (!error.empty()) os << " (" << error << ")";
        r.counterexample = os.str();
      }
    } else {
      r.worst = std::max(r.worst, v);
    }
  }
  return r;
}

std::vector<CheckResult> runSuite(int cases, std::uint64_t seed) {
  std::vector<CheckResult> results;
  std::uint64_t s = seed;
  for (const auto& law : algebraicLaws()) results.push_back(runLaw(law, cases, s++));
  return results;
}

}  // namespace eberlein::verify
