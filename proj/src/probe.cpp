#include "eberlein/probe.hpp"

#include <algorithm>
#include <cmath>

#include "eberlein/errors.hpp"
#include "eberlein/kernels.hpp"

namespace eberlein {

ProbeSeminorm ProbeSeminorm::grid(const Window& window, double tentWidth, double step) {
  if (!(tentWidth > 0.0)) throw ValidationError("tent width must be positive");
  if (!(step > 0.0)) throw ValidationError("probe step must be positive");
  ProbeSeminorm p;
  p.tentWidth = tentWidth;
  const double lo = window.lo + tentWidth;
  const double hi = window.hi - tentWidth;
  for (long i = 0;; ++i) {
    const double c = lo + static_cast<double>(i) * step;
    if (c > hi + 1e-12 * std::max(1.0, std::abs(hi))) break;
    p.centers.push_back(std::min(c, hi));
  }
  if (p.centers.empty()) throw ValidationError("window too small for the probe tent");
  return p;
}

ProbeSeminorm ProbeSeminorm::parse(const std::string& spec, const Window& window) {
  const auto colon = spec.find(':');
  try {
    if (colon == std::string::npos) return grid(window, std::stod(spec));
    return grid(window, std::stod(spec.substr(0, colon)), std::stod(spec.substr(colon + 1)));
  } catch (const ValidationError&) {
    throw;
  } catch (const std::exception&) {
    throw ValidationError("probe spec must be W:STEP, got '" + spec + "'");
  }
}

Window ProbeSeminorm::reach() const {
  if (centers.empty()) throw ValidationError("probe has no centers");
  const auto [mn, mx] = std::minmax_element(centers.begin(), centers.end());
  return {*mn - tentWidth, std::nextafter(*mx + tentWidth, *mx + 2.0 * tentWidth)};
}

namespace {

void checkReach(const Measure& mu, std::span<const double> centers, double reach) {
  if (mu.compact() || centers.empty()) return;
  const auto [mn, mx] = std::minmax_element(centers.begin(), centers.end());
  const Window needed{*mn - reach, *mx + reach};
  if (!mu.knownOn(needed)) {
    throw SupportError("probe reaches outside the region where the measure is known");
  }
}

}  // namespace

std::vector<Complex> probeEval(const Measure& mu, const ProbeSeminorm& probe) {
  checkReach(mu, probe.centers, probe.tentWidth);
  return parallel::probeValues(mu, probe.centers, probe.kernel());
}

double probeNorm(const Measure& mu, const ProbeSeminorm& probe) {
  double m = 0.0;
  for (const auto& v : probeEval(mu, probe)) m = std::max(m, std::abs(v));
  return m;
}

double probeDistance(const Measure& a, const Measure& b, const ProbeSeminorm& probe) {
  const auto va = probeEval(a, probe);
  const auto vb = probeEval(b, probe);
  double m = 0.0;
  for (std::size_t i = 0; i < va.size(); ++i) m = std::max(m, std::abs(va[i] - vb[i]));
  return m;
}

Complex smoothedMass(const Measure& mu, double center, double tentWidth) {
  const double c[] = {center};
  checkReach(mu, c, tentWidth);
  return tentWidth * detail::probeValueAt(mu, center, SmoothingKernel::tent(tentWidth));
}

std::vector<Complex> smoothedGram(const Measure& gamma, std::span<const double> points,
                                  double tentWidth) {
  const std::size_t n = points.size();
  std::vector<double> diffs;
  diffs.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) diffs.push_back(points[i] - points[j]);
  }
  const auto kernel = SmoothingKernel::tentSquared(tentWidth);
  checkReach(gamma, diffs, kernel.radius());
  return parallel::probeValues(gamma, diffs, kernel);
}

}  // namespace eberlein
