#include "eberlein/eberlein.hpp"

#include <algorithm>
#include <cmath>
#include <exception>

#include "eberlein/errors.hpp"
#include "eberlein/kernels.hpp"

namespace eberlein {

namespace {

void checkOut(const Window& A, const Window& out) {
  const Window reachable{A.lo - A.hi, A.hi - A.lo};
  if (!reachable.covers(out)) {
    throw ValidationError("output window exceeds the set of reachable differences A - A");
  }
}

void checkKnown(const Measure& m, const Window& w, const char* what) {
  if (!m.knownOn(w)) {
    throw SupportError(std::string("support shortfall: ") + what +
                       " is not known on the region the computation reads");
  }
}

// Compact copy of m on the part of `needed` where it is known.
Measure unrestricted(const Measure& m, const Window& needed) {
  if (m.compact()) return m;
  return restrict(m, needed);
}

}  // namespace

Measure finiteTwisted(const Measure& mu, const Measure& nu, const Window& A, const Window& out,
                      const ConvolutionOptions& options) {
  return finiteTwistedAlt(mu, nu, A, out, LimitForm::both, options);
}

Measure finiteEberlein(const Measure& mu, const Measure& nu, const Window& A, const Window& out,
                       const ConvolutionOptions& options) {
  return finiteTwisted(mu, reflectTilde(nu), A, out, options);
}

Measure finiteTwistedAlt(const Measure& mu, const Measure& nu, const Window& A,
                         const Window& out, LimitForm form, const ConvolutionOptions& options) {
  checkOut(A, out);
  Measure left;
  Measure right;
  // s - r in out with s in A needs r in [A.lo - out.hi, A.hi - out.lo], and
  // symmetrically for s when r is in A
  const Window rNeeded{A.lo - out.hi, A.hi - out.lo};
  const Window sNeeded{A.lo + out.lo, A.hi + out.hi};
  switch (form) {
    case LimitForm::both:
      checkKnown(mu, A, "mu");
      checkKnown(nu, A, "nu");
      left = restrict(mu, A);
      right = restrict(nu, A);
      break;
    case LimitForm::leftOnly:
      checkKnown(mu, sNeeded, "mu");
      checkKnown(nu, A, "nu");
      left = unrestricted(mu, sNeeded);
      right = restrict(nu, A);
      break;
    case LimitForm::rightOnly:
      checkKnown(mu, A, "mu");
      checkKnown(nu, rNeeded, "nu");
      left = restrict(mu, A);
      right = unrestricted(nu, rNeeded);
      break;
  }
  return convolveFinite(left, reflectTilde(right), out, options).scaled(1.0 / A.length());
}

double boundaryDefect(const Measure& mu, const Measure& nu, const Window& A,
                      const ProbeSeminorm& probe, const ConvolutionOptions& options) {
  const Window reach = probe.reach();
  const Window sNeeded{A.lo + reach.lo, A.hi + reach.hi};
  if (!mu.knownOn(sNeeded) || !nu.knownOn(A)) {
    throw SupportError("boundaryDefect: mu must be stored beyond A by the probe reach");
  }
  Measure outside;
  if (sNeeded.lo < A.lo) outside = restrict(mu, Window{sNeeded.lo, A.lo});
  if (A.hi < sNeeded.hi) {
    outside = addScaled(outside, restrict(mu, Window{A.hi, sNeeded.hi}), 1.0, 1.0);
  }
  const Measure defect =
      convolveFinite(outside.withSampledOn(std::nullopt), reflectTilde(restrict(nu, A)), reach,
                     options)
          .scaled(1.0 / A.length());
  return probeNorm(defect, probe);
}

EberleinLimit twistedEberlein(const Measure& mu, const Measure& nu, const VanHoveFamily& family,
                              const Window& out, const ProbeSeminorm& probe,
                              const ConvergenceOptions& conv, const ConvolutionOptions& options) {
  if (!(conv.tol > 0.0)) throw ValidationError("tol must be positive");
  if (conv.nMax < 2) throw ValidationError("nMax must be at least 2");
  checkOut(family.interval(1), out);
  const Window largest = family.interval(conv.nMax);
  checkKnown(mu, largest, "mu");
  checkKnown(nu, largest, "nu");

  EberleinLimit result;
  result.report.metric = "probe sup, tent width " + std::to_string(probe.tentWidth) + ", " +
                         std::to_string(probe.centers.size()) + " centers";
  std::vector<Complex> previous;
  double threshold = conv.tol;
  const int batch = std::max(1, kernelThreads());

  for (int start = 1; start <= conv.nMax; start += batch) {
    const int stop = std::min(conv.nMax, start + batch - 1);
    const int count = stop - start + 1;
    std::vector<Measure> gammas(static_cast<std::size_t>(count));
    std::vector<std::vector<Complex>> values(static_cast<std::size_t>(count));
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1) if (count > 1)
    for (int i = 0; i < count; ++i) {
      try {
        const auto idx = static_cast<std::size_t>(i);
        gammas[idx] = finiteTwisted(mu, nu, family.interval(start + i), out, options);
        values[idx] = probeEval(gammas[idx], probe);
      } catch (...) {
#pragma omp critical
        if (!failure) failure = std::current_exception();
      }
    }
    if (failure) std::rethrow_exception(failure);

    for (int i = 0; i < count; ++i) {
      const auto idx = static_cast<std::size_t>(i);
      const int n = start + i;
      ConvergenceStage stage{n, family.interval(n).length(), std::nullopt};
      if (n == 1) {
        if (conv.relative) {
          double scale = 0.0;
          for (const auto& v : values[idx]) scale = std::max(scale, std::abs(v));
          threshold = conv.tol * (scale > 0.0 ? scale : 1.0);
        }
      } else {
        double d = 0.0;
        for (std::size_t c = 0; c < values[idx].size(); ++c) {
          d = std::max(d, std::abs(values[idx][c] - previous[c]));
        }
        stage.distance = d;
      }
      result.report.stages.push_back(stage);
      result.report.finalN = n;
      result.gamma = std::move(gammas[idx]);
      previous = std::move(values[idx]);
      if (stage.distance && *stage.distance < threshold) {
        result.report.converged = true;
        result.report.threshold = threshold;
        return result;
      }
    }
  }
  result.report.threshold = threshold;
  return result;
}

std::array<Measure, 4> polarisationParts(const Measure& mu, const Measure& nu, const Window& A,
                                         const Window& out, const ConvolutionOptions& options) {
  const Complex i{0.0, 1.0};
  const Measure sums[4] = {addScaled(mu, nu, 1.0, 1.0), addScaled(mu, nu, 1.0, -1.0),
                           addScaled(mu, nu, 1.0, i), addScaled(mu, nu, 1.0, -i)};
  return {finiteTwisted(sums[0], sums[0], A, out, options),
          finiteTwisted(sums[1], sums[1], A, out, options),
          finiteTwisted(sums[2], sums[2], A, out, options),
          finiteTwisted(sums[3], sums[3], A, out, options)};
}

Measure polarisationCombine(const Measure& pp, const Measure& mm, const Measure& pi,
                            const Measure& mi) {
  const auto on = pp.sampledOn();
  for (const Measure* m : {&mm, &pi, &mi}) {
    if (m->sampledOn() != on) throw ValidationError("polarisation parts live on different windows");
    if (m->density().size() != pp.density().size()) {
      throw ValidationError("polarisation parts use different density grids");
    }
    for (std::size_t k = 0; k < pp.density().size(); ++k) {
      const auto& a = pp.density()[k];
      const auto& b = m->density()[k];
      if (a.origin != b.origin || a.step != b.step || a.size() != b.size()) {
        throw ValidationError("polarisation parts use different density grids");
      }
    }
  }
  const Complex i{0.0, 1.0};
  const Measure real = addScaled(pp, mm, 0.25, -0.25);
  const Measure imag = addScaled(pi, mi, 0.25 * i, -0.25 * i);
  return addScaled(real, imag, 1.0, 1.0);
}

}  // namespace eberlein
