#pragma once

// Hot loops of the library, each in two variants with identical results:
// `serial` is the reference kept for testing and benchmarking, `parallel`
// distributes the outer loop over OpenMP threads. Parallel variants write
// per-chunk buffers that are concatenated in chunk order, so their output
// is bit-identical to the serial one.

#include <cstddef>
#include <span>
#include <vector>

#include "eberlein/measure.hpp"
#include "eberlein/smoothing.hpp"

namespace eberlein {

/// One contribution of the point x point convolution: the atom of the first
/// factor at `first` paired with an atom of the second factor.
struct PairTerm {
  double position;
  double first;
  Complex weight;
};

namespace serial {

/// All pairs with a[i].position + b[j].position in `out`; inputs sorted.
std::vector<PairTerm> atomPairs(std::span<const Atom> a, std::span<const Atom> b,
                                const Window& out);

/// v_k = h * sum_{i+j=k} a_i b_j for k in [k0, k1].
std::vector<Complex> sampleConvolution(std::span<const Complex> a, std::span<const Complex> b,
                                       double h, std::size_t k0, std::size_t k1);

/// (mu * kernel)(c) for every center c.
std::vector<Complex> probeValues(const Measure& mu, std::span<const double> centers,
                                 const SmoothingKernel& kernel);

/// Integral over A of exp(-2 pi i k s) dmu(s), unnormalized, for every k.
std::vector<Complex> fourierBohrSums(const Measure& mu, std::span<const double> ks,
                                     const Window& A);

}  // namespace serial

namespace parallel {

std::vector<PairTerm> atomPairs(std::span<const Atom> a, std::span<const Atom> b,
                                const Window& out);
std::vector<Complex> sampleConvolution(std::span<const Complex> a, std::span<const Complex> b,
                                       double h, std::size_t k0, std::size_t k1);
std::vector<Complex> probeValues(const Measure& mu, std::span<const double> centers,
                                 const SmoothingKernel& kernel);
std::vector<Complex> fourierBohrSums(const Measure& mu, std::span<const double> ks,
                                     const Window& A);

}  // namespace parallel

/// Number of OpenMP threads the parallel kernels will use (1 without OpenMP).
int kernelThreads();

namespace detail {
// Per-item bodies shared by both variants.
void appendPairsFor(const Atom& x, std::span<const Atom> b, const Window& out,
                    std::vector<PairTerm>& sink);
Complex sampleConvolutionAt(std::span<const Complex> a, std::span<const Complex> b, double h,
                            std::size_t k);
Complex probeValueAt(const Measure& mu, double center, const SmoothingKernel& kernel);
Complex fourierBohrSumAt(const Measure& mu, double k, const Window& A);
}  // namespace detail

}  // namespace eberlein
