#include <algorithm>

#include "eberlein/kernels.hpp"

#ifdef EBERLEIN_HAVE_OPENMP
#include <omp.h>
#endif

namespace eberlein {

int kernelThreads() {
#ifdef EBERLEIN_HAVE_OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

namespace parallel {

std::vector<PairTerm> atomPairs(std::span<const Atom> a, std::span<const Atom> b,
                                const Window& out) {
  const auto n = static_cast<std::ptrdiff_t>(a.size());
  const std::ptrdiff_t chunks = std::max<std::ptrdiff_t>(1, std::min<std::ptrdiff_t>(n, 4 * kernelThreads()));
  std::vector<std::vector<PairTerm>> parts(static_cast<std::size_t>(chunks));
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t c = 0; c < chunks; ++c) {
    const std::ptrdiff_t lo = n * c / chunks;
    const std::ptrdiff_t hi = n * (c + 1) / chunks;
    auto& sink = parts[static_cast<std::size_t>(c)];
    for (std::ptrdiff_t i = lo; i < hi; ++i) {
      detail::appendPairsFor(a[static_cast<std::size_t>(i)], b, out, sink);
    }
  }
  std::size_t total = 0;
  for (const auto& p : parts) total += p.size();
  std::vector<PairTerm> terms;
  terms.reserve(total);
  for (auto& p : parts) terms.insert(terms.end(), p.begin(), p.end());
  return terms;
}

std::vector<Complex> sampleConvolution(std::span<const Complex> a, std::span<const Complex> b,
                                       double h, std::size_t k0, std::size_t k1) {
  std::vector<Complex> v;
  if (a.empty() || b.empty() || k1 < k0) return v;
  v.resize(k1 - k0 + 1);
  const auto count = static_cast<std::ptrdiff_t>(v.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t j = 0; j < count; ++j) {
    v[static_cast<std::size_t>(j)] =
        detail::sampleConvolutionAt(a, b, h, k0 + static_cast<std::size_t>(j));
  }
  return v;
}

std::vector<Complex> probeValues(const Measure& mu, std::span<const double> centers,
                                 const SmoothingKernel& kernel) {
  std::vector<Complex> v(centers.size());
  const auto count = static_cast<std::ptrdiff_t>(centers.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t j = 0; j < count; ++j) {
    const auto i = static_cast<std::size_t>(j);
    v[i] = detail::probeValueAt(mu, centers[i], kernel);
  }
  return v;
}

std::vector<Complex> fourierBohrSums(const Measure& mu, std::span<const double> ks,
                                     const Window& A) {
  std::vector<Complex> v(ks.size());
  const auto count = static_cast<std::ptrdiff_t>(ks.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t j = 0; j < count; ++j) {
    const auto i = static_cast<std::size_t>(j);
    v[i] = detail::fourierBohrSumAt(mu, ks[i], A);
  }
  return v;
}

}  // namespace parallel

}  // namespace eberlein
