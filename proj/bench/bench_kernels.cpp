// Times the serial reference kernels against the OpenMP variants and checks
// that both produce the same numbers.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <vector>

#include "eberlein/generators.hpp"
#include "eberlein/kernels.hpp"
#include "eberlein/smoothing.hpp"

using namespace eberlein;

namespace {

double seconds(const std::function<void()>& f, int reps) {
  const auto t0 = std::chrono::steady_clock::now();
  for (int r = 0; r < reps; ++r) f();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(t1 - t0).count() / reps;
}

template <class T>
bool same(const std::vector<T>& a, const std::vector<T>& b);

template <>
bool same(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  return a == b;
}

template <>
bool same(const std::vector<PairTerm>& a, const std::vector<PairTerm>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].position != b[i].position || a[i].first != b[i].first || a[i].weight != b[i].weight) {
      return false;
    }
  }
  return true;
}

template <class F, class G>
void row(const char* name, F serialRun, G parallelRun, int reps) {
  decltype(serialRun()) s, p;
  const double ts = seconds([&] { s = serialRun(); }, reps);
  const double tp = seconds([&] { p = parallelRun(); }, reps);
  std::printf("%-22s %12.6f %12.6f %8.2fx  %s\n", name, ts, tp, ts / tp,
              same(s, p) ? "identical" : "MISMATCH");
}

}  // namespace

int main() {
  std::printf("threads: %d\n", kernelThreads());
  std::printf("%-22s %12s %12s %9s\n", "kernel", "serial[s]", "parallel[s]", "speedup");

  const Window w{-2000.0, 2000.0};
  const Measure bern = restrict(bernoulliComb(0.5, 1.0, -1.0, 7, w), w);
  const auto [fa, fb] = fibonacciPoints(w);
  const Measure fib = restrict(addScaled(fa, fb, 1.0, 1.0), w);
  const Window out{-300.0, 300.0};
  row("atomPairs", [&] { return serial::atomPairs(bern.atoms(), fib.atoms(), out); },
      [&] { return parallel::atomPairs(bern.atoms(), fib.atoms(), out); }, 3);

  std::vector<Complex> a(20000), b(20000);
  for (std::size_t i = 0; i < a.size(); ++i) {
    a[i] = {std::sin(0.01 * static_cast<double>(i)), 0.5};
    b[i] = {1.0, std::cos(0.003 * static_cast<double>(i))};
  }
  row("sampleConvolution", [&] { return serial::sampleConvolution(a, b, 0.01, 10000, 29999); },
      [&] { return parallel::sampleConvolution(a, b, 0.01, 10000, 29999); }, 2);

  std::vector<double> centers;
  for (double c = -1900.0; c < 1900.0; c += 0.05) centers.push_back(c);
  const auto tent = SmoothingKernel::tent(1.0);
  row("probeValues", [&] { return serial::probeValues(fib, centers, tent); },
      [&] { return parallel::probeValues(fib, centers, tent); }, 3);

  std::vector<double> ks;
  for (int j = -200; j <= 200; ++j) ks.push_back(0.01 * j);
  row("fourierBohrSums", [&] { return serial::fourierBohrSums(bern, ks, w); },
      [&] { return parallel::fourierBohrSums(bern, ks, w); }, 3);
  return 0;
}
