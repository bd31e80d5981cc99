#include <algorithm>
#include <cmath>

#include "eberlein/kernels.hpp"

namespace eberlein {

namespace detail {

void appendPairsFor(const Atom& x, std::span<const Atom> b, const Window& out,
                    std::vector<PairTerm>& sink) {
  const double slack = coalescingTolerance(out.lo - x.position, out.hi - x.position);
  auto it = std::lower_bound(b.begin(), b.end(), out.lo - x.position - slack,
                             [](const Atom& a, double v) { return a.position < v; });
  const double stop = out.hi - x.position + slack;
  for (; it != b.end() && it->position <= stop; ++it) {
    const double s = x.position + it->position;
    if (s >= out.lo && s < out.hi) sink.push_back({s, x.position, x.weight * it->weight});
  }
}

Complex sampleConvolutionAt(std::span<const Complex> a, std::span<const Complex> b, double h,
                            std::size_t k) {
  const std::size_t na = a.size();
  const std::size_t nb = b.size();
  const std::size_t iLo = k >= nb ? k - (nb - 1) : 0;
  const std::size_t iHi = std::min(na - 1, k);
  double re = 0.0;
  double im = 0.0;
  for (std::size_t i = iLo; i <= iHi && iLo <= iHi; ++i) {
    const Complex& x = a[i];
    const Complex& y = b[k - i];
    re += x.real() * y.real() - x.imag() * y.imag();
    im += x.real() * y.imag() + x.imag() * y.real();
  }
  return {re * h, im * h};
}

Complex probeValueAt(const Measure& mu, double center, const SmoothingKernel& kernel) {
  const double r = kernel.radius();
  Complex acc{};
  const auto atoms = mu.atoms();
  auto it = std::lower_bound(atoms.begin(), atoms.end(), center - r,
                             [](const Atom& a, double v) { return a.position < v; });
  for (; it != atoms.end() && it->position <= center + r; ++it) {
    acc += it->weight * kernel.value(center - it->position);
  }
  const auto [s0, s1] = mu.segmentsNear(center - r, center + r);
  for (std::size_t s = s0; s < s1; ++s) {
    const auto& d = mu.density()[s];
    if (d.end() <= center - r || d.origin >= center + r) continue;
    const double first = std::floor((center - r - d.origin) / d.step);
    const double last = std::ceil((center + r - d.origin) / d.step);
    const auto i0 = static_cast<std::size_t>(std::max(0.0, first));
    const auto i1 = std::min(d.size(), static_cast<std::size_t>(std::max(0.0, last) + 1.0));
    for (std::size_t i = i0; i < i1; ++i) {
      acc += d.samples[i] * kernel.cellIntegral(center, d.cellLo(i), d.cellHi(i));
    }
  }
  return acc;
}

Complex fourierBohrSumAt(const Measure& mu, double k, const Window& A) {
  CompensatedSum sum;
  const auto atoms = mu.atoms();
  auto it = std::lower_bound(atoms.begin(), atoms.end(), A.lo,
                             [](const Atom& a, double v) { return a.position < v; });
  for (; it != atoms.end() && it->position < A.hi; ++it) {
    sum.add(it->weight * conjCharacter(k, it->position));
  }
  const auto [s0, s1] = mu.segmentsNear(A.lo, A.hi);
  for (std::size_t s = s0; s < s1; ++s) {
    const auto& d = mu.density()[s];
    if (d.end() <= A.lo || d.origin >= A.hi) continue;
    const double first = std::floor((A.lo - d.origin) / d.step);
    const double last = std::ceil((A.hi - d.origin) / d.step);
    const auto i0 = static_cast<std::size_t>(std::max(0.0, first));
    const auto i1 = std::min(d.size(), static_cast<std::size_t>(std::max(0.0, last) + 1.0));
    for (std::size_t i = i0; i < i1; ++i) {
      const double lo = std::max(d.cellLo(i), A.lo);
      const double hi = std::min(d.cellHi(i), A.hi);
      if (lo < hi) sum.add(d.samples[i] * conjCharacterIntegral(k, lo, hi));
    }
  }
  return sum.value();
}

}  // namespace detail

namespace serial {

std::vector<PairTerm> atomPairs(std::span<const Atom> a, std::span<const Atom> b,
                                const Window& out) {
  std::vector<PairTerm> terms;
  for (const auto& x : a) detail::appendPairsFor(x, b, out, terms);
  return terms;
}

std::vector<Complex> sampleConvolution(std::span<const Complex> a, std::span<const Complex> b,
                                       double h, std::size_t k0, std::size_t k1) {
  std::vector<Complex> v;
  if (a.empty() || b.empty() || k1 < k0) return v;
  v.reserve(k1 - k0 + 1);
  for (std::size_t k = k0; k <= k1; ++k) v.push_back(detail::sampleConvolutionAt(a, b, h, k));
  return v;
}

std::vector<Complex> probeValues(const Measure& mu, std::span<const double> centers,
                                 const SmoothingKernel& kernel) {
  std::vector<Complex> v;
  v.reserve(centers.size());
  for (double c : centers) v.push_back(detail::probeValueAt(mu, c, kernel));
  return v;
}

std::vector<Complex> fourierBohrSums(const Measure& mu, std::span<const double> ks,
                                     const Window& A) {
  std::vector<Complex> v;
  v.reserve(ks.size());
  for (double k : ks) v.push_back(detail::fourierBohrSumAt(mu, k, A));
  return v;
}

}  // namespace serial

}  // namespace eberlein
