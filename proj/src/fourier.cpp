#include "eberlein/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>

#include "eberlein/errors.hpp"
#include "eberlein/kernels.hpp"

namespace eberlein {

namespace {

// exp(-2 pi i k (s - t)) with s - t split exactly into d + e.
Complex conjCharacterOfDifference(double k, double s, double t) {
  const double d = s - t;
  const double bb = d - s;
  const double e = (s - (d - bb)) + (-t - bb);
  const double prod = k * d;
  const double err = std::fma(k, d, -prod) + k * e;
  const double frac = (prod - std::nearbyint(prod)) + err;
  const double angle = -2.0 * std::numbers::pi * frac;
  return {std::cos(angle), std::sin(angle)};
}

int coveredStages(const Measure& mu, const VanHoveFamily& family, int nMax) {
  if (nMax < 1) throw ValidationError("nMax must be positive");
  if (mu.compact()) return nMax;
  const int n = family.largestCoveredStage(*mu.sampledOn(), nMax);
  if (n < 1) {
    throw SupportError("support shortfall: the first averaging interval exceeds the stored window");
  }
  return n;
}

}  // namespace

TrigPolynomial TrigPolynomial::make(std::vector<Term> terms) {
  for (const auto& t : terms) {
    if (!std::isfinite(t.frequency) || !std::isfinite(t.coefficient.real()) ||
        !std::isfinite(t.coefficient.imag())) {
      throw ValidationError("trig polynomial terms must be finite");
    }
  }
  for (std::size_t i = 0; i < terms.size(); ++i) {
    for (std::size_t j = i + 1; j < terms.size(); ++j) {
      if (std::abs(terms[i].frequency - terms[j].frequency) <= 1e-12) {
        throw ValidationError("trig polynomial frequencies must be distinct");
      }
    }
  }
  return TrigPolynomial{std::move(terms)};
}

Complex TrigPolynomial::operator()(double x) const {
  Complex v{};
  for (const auto& t : terms) v += t.coefficient * character(t.frequency, x);
  return v;
}

Complex fbCoefficient(const Measure& mu, double k, const Window& A) {
  if (!std::isfinite(k)) throw ValidationError("frequency must be finite");
  if (!mu.knownOn(A)) throw SupportError("support shortfall: measure not known on A");
  return detail::fourierBohrSumAt(mu, k, A) / A.length();
}

FourierBohrLimit fbLimit(const Measure& mu, double k, const VanHoveFamily& family, double tol,
                         int nMax) {
  if (!(tol > 0.0)) throw ValidationError("tol must be positive");
  if (!std::isfinite(k)) throw ValidationError("frequency must be finite");
  const int stages = coveredStages(mu, family, nMax);

  FourierBohrLimit result;
  result.report.metric = "|a_n - a_(n-1)|";
  result.report.threshold = tol;
  Window inner = family.interval(1);
  Complex sum = detail::fourierBohrSumAt(mu, k, inner);
  result.value = sum / inner.length();
  result.report.stages.push_back({1, inner.length(), std::nullopt});
  result.report.finalN = 1;
  for (int n = 2; n <= stages; ++n) {
    const Window outer = family.interval(n);
    if (outer.lo < inner.lo) sum += detail::fourierBohrSumAt(mu, k, {outer.lo, inner.lo});
    if (inner.hi < outer.hi) sum += detail::fourierBohrSumAt(mu, k, {inner.hi, outer.hi});
    const Complex value = sum / outer.length();
    const double d = std::abs(value - result.value);
    result.report.stages.push_back({n, outer.length(), d});
    result.report.finalN = n;
    result.value = value;
    inner = outer;
    if (d < tol) {
      result.report.converged = true;
      break;
    }
  }
  return result;
}

double characterLemmaResidual(const Measure& mu, double k, const Window& A,
                              std::span<const double> tGrid) {
  if (mu.empty()) return 0.0;
  const Complex a = fbCoefficient(mu, k, A);
  const auto atoms = mu.atoms();
  auto first = std::lower_bound(atoms.begin(), atoms.end(), A.lo,
                                [](const Atom& x, double v) { return x.position < v; });
  double worst = 0.0;
  for (double t : tGrid) {
    CompensatedSum lhs;
    for (auto it = first; it != atoms.end() && it->position < A.hi; ++it) {
      lhs.add(it->weight * conjCharacterOfDifference(k, it->position, t));
    }
    for (const auto& d : mu.density()) {
      for (std::size_t i = 0; i < d.size(); ++i) {
        const double lo = std::max(d.cellLo(i), A.lo);
        const double hi = std::min(d.cellHi(i), A.hi);
        if (!(lo < hi)) continue;
        const double width = hi - lo;
        const double shape = k == 0.0 ? width : width * sinc(std::numbers::pi * k * width);
        lhs.add(d.samples[i] * shape * conjCharacterOfDifference(k, 0.5 * (lo + hi), t));
      }
    }
    const Complex value = lhs.value() / A.length();
    worst = std::max(worst, std::abs(value - character(k, t) * a));
  }
  return worst;
}

std::vector<CppEntry> cppCheck(const Measure& mu, const Measure& nu, const Measure& gamma,
                               std::span<const double> freqs, const VanHoveFamily& family,
                               double tol, int nMax) {
  if (!(tol > 0.0)) throw ValidationError("tol must be positive");
  if (!gamma.compact() && family.largestCoveredStage(*gamma.sampledOn(), nMax) < 1) {
    throw ValidationError("window mismatch: gamma is not known on the first averaging interval");
  }
  coveredStages(mu, family, nMax);
  coveredStages(nu, family, nMax);

  std::vector<CppEntry> out(freqs.size());
  std::exception_ptr failure;
  const auto count = static_cast<std::ptrdiff_t>(freqs.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t j = 0; j < count; ++j) {
    try {
      const auto i = static_cast<std::size_t>(j);
      const double k = freqs[i];
      const auto g = fbLimit(gamma, k, family, tol, nMax);
      const auto m = fbLimit(mu, k, family, tol, nMax);
      const auto v = fbLimit(nu, k, family, tol, nMax);
      out[i] = {k, std::abs(g.value - m.value * std::conj(v.value)), g.value, m.value, v.value,
                g.report.converged && m.report.converged && v.report.converged};
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

std::vector<PointAmplitude> diffractPointPart(const Measure& gamma,
                                              std::span<const double> candidates,
                                              const VanHoveFamily& family, double tol, int nMax) {
  if (!(tol > 0.0)) throw ValidationError("tol must be positive");
  coveredStages(gamma, family, nMax);
  std::vector<PointAmplitude> all(candidates.size());
  std::exception_ptr failure;
  const auto count = static_cast<std::ptrdiff_t>(candidates.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t j = 0; j < count; ++j) {
    try {
      const auto i = static_cast<std::size_t>(j);
      const auto r = fbLimit(gamma, candidates[i], family, tol, nMax);
      all[i] = {candidates[i], r.value, r.report.converged};
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  std::vector<PointAmplitude> kept;
  for (const auto& a : all) {
    if (std::abs(a.amplitude) >= tol) kept.push_back(a);
  }
  return kept;
}

}  // namespace eberlein
