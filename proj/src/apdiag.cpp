#include "eberlein/apdiag.hpp"

#include <algorithm>
#include <cmath>
#include <exception>

#include "eberlein/errors.hpp"
#include "eberlein/kernels.hpp"
#include "eberlein/probe.hpp"
#include "eberlein/smoothing.hpp"

namespace eberlein {

namespace {

// Piecewise-constant |f|^p as breakpoints with the running integral.
struct PowerProfile {
  std::vector<double> x;
  std::vector<double> integral;

  double upTo(double y) const {
    if (x.empty() || y <= x.front()) return 0.0;
    if (y >= x.back()) return integral.back();
    const auto it = std::upper_bound(x.begin(), x.end(), y);
    const auto j = static_cast<std::size_t>(it - x.begin()) - 1;
    const double slope = (integral[j + 1] - integral[j]) / (x[j + 1] - x[j]);
    return integral[j] + slope * (y - x[j]);
  }
  double over(const Window& w) const { return upTo(w.hi) - upTo(w.lo); }
};

PowerProfile densityProfile(const Measure& f, double p) {
  struct Event {
    double x;
    Complex delta;
  };
  std::vector<Event> events;
  for (const auto& d : f.density()) {
    Complex prev{};
    for (std::size_t i = 0; i < d.size(); ++i) {
      events.push_back({d.cellLo(i), d.samples[i] - prev});
      prev = d.samples[i];
    }
    events.push_back({d.end(), -prev});
  }
  std::stable_sort(events.begin(), events.end(),
                   [](const Event& a, const Event& b) { return a.x < b.x; });
  PowerProfile prof;
  Complex g{};
  double acc = 0.0;
  std::size_t i = 0;
  while (i < events.size()) {
    const double xi = events[i].x;
    if (!prof.x.empty()) acc += std::pow(std::abs(g), p) * (xi - prof.x.back());
    while (i < events.size() && events[i].x == xi) g += events[i++].delta;
    prof.x.push_back(xi);
    prof.integral.push_back(acc);
  }
  return prof;
}

void checkExponent(double p, int nMax) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw ValidationError("exponent p must be >= 1");
  if (nMax < 1) throw ValidationError("nMax must be positive");
}

BesicovitchEstimate fromProfile(const PowerProfile& prof, double p, const VanHoveFamily& family,
                                int nMax) {
  BesicovitchEstimate e;
  for (int n = 1; n <= nMax; ++n) {
    const Window A = family.interval(n);
    e.stageLengths.push_back(A.length());
    e.stageValues.push_back(std::pow(std::max(0.0, prof.over(A)) / A.length(), 1.0 / p));
  }
  const int tail = (nMax + 3) / 4;
  e.value = *std::max_element(e.stageValues.end() - tail, e.stageValues.end());
  return e;
}

Window regionKnownUnderShifts(const Measure& mu, const Window& tRange, double reach) {
  std::optional<Window> base = mu.sampledOn();
  if (!base) {
    const auto h = mu.hull();
    if (!h) return {-1.0, 1.0};
    // a compact measure is known everywhere; cover it and all its translates
    return {std::min(h->lo, h->lo + tRange.lo) - reach, std::max(h->hi, h->hi + tRange.hi) + reach};
  }
  const Window region{base->lo + std::max(0.0, tRange.hi) + reach,
                      base->hi + std::min(0.0, tRange.lo) - reach};
  if (!(region.lo < region.hi)) {
    throw SupportError("scan range too wide for the window the measure is known on");
  }
  return region;
}

}  // namespace

BesicovitchEstimate besicovitchSeminorm(const Measure& f, double p, const VanHoveFamily& family,
                                        int nMax) {
  checkExponent(p, nMax);
  if (!f.atoms().empty()) {
    throw ValidationError("besicovitchSeminorm needs a density; smooth measures with atoms first");
  }
  if (!f.knownOn(family.interval(nMax))) {
    throw SupportError("support shortfall: density not known on the largest averaging interval");
  }
  return fromProfile(densityProfile(f, p), p, family, nMax);
}

BesicovitchEstimate smoothedBesicovitch(const Measure& mu, double tentWidth, double p,
                                        const VanHoveFamily& family, int nMax) {
  checkExponent(p, nMax);
  if (!(tentWidth > 0.0)) throw ValidationError("tent width must be positive");
  const Window big = family.interval(nMax);
  if (!mu.knownOn(big.expanded(tentWidth))) {
    throw SupportError("support shortfall: measure not known on the largest interval plus the tent");
  }
  const double h = tentWidth / 16.0;
  const auto cells = static_cast<std::size_t>(std::ceil(big.length() / h));
  std::vector<double> mids(cells);
  for (std::size_t i = 0; i < cells; ++i) mids[i] = big.lo + (static_cast<double>(i) + 0.5) * h;
  const auto values = parallel::probeValues(mu, mids, SmoothingKernel::tent(tentWidth));

  PowerProfile prof;
  prof.x.reserve(cells + 1);
  prof.integral.reserve(cells + 1);
  double acc = 0.0;
  prof.x.push_back(big.lo);
  prof.integral.push_back(0.0);
  for (std::size_t i = 0; i < cells; ++i) {
    acc += std::pow(std::abs(values[i]), p) * h;
    prof.x.push_back(big.lo + static_cast<double>(i + 1) * h);
    prof.integral.push_back(acc);
  }
  return fromProfile(prof, p, family, nMax);
}

BesicovitchEstimate smoothedBesicovitchDistance(const Measure& mu, const Measure& nu,
                                                double tentWidth, double p,
                                                const VanHoveFamily& family, int nMax) {
  return smoothedBesicovitch(addScaled(mu, nu, 1.0, -1.0), tentWidth, p, family, nMax);
}

double kNormDistance(const Measure& mu, const Measure& nu, double kLen, const Window& searchWindow) {
  if (!(kLen > 0.0)) throw ValidationError("kLen must be positive");
  return slidingTotalVariationSup(addScaled(mu, nu, 1.0, -1.0), kLen, searchWindow);
}

std::string toString(NormKind kind) {
  switch (kind) {
    case NormKind::besicovitch: return "besicovitch";
    case NormKind::kNorm: return "kNorm";
    case NormKind::smoothedSup: return "smoothedSup";
  }
  return "unknown";
}

AlmostPeriodScan almostPeriodScan(const Measure& mu, double eps, NormKind kind,
                                  const ScanParams& params, const Window& tRange, double tStep) {
  if (!(eps > 0.0)) throw ValidationError("eps must be positive");
  if (!(tStep > 0.0)) throw ValidationError("tStep must be positive");
  if (!(tRange.lo <= tRange.hi)) throw ValidationError("empty translation range");

  AlmostPeriodScan scan;
  scan.epsilon = eps;
  scan.normKind = kind;
  scan.scanRange = tRange;
  scan.tStep = tStep;
  const auto steps = static_cast<std::size_t>(std::floor((tRange.hi - tRange.lo) / tStep + 1e-9));
  for (std::size_t j = 0; j <= steps; ++j) scan.ts.push_back(tRange.lo + static_cast<double>(j) * tStep);

  const double reach = kind == NormKind::kNorm ? 0.0 : params.tentWidth;
  const Window region = regionKnownUnderShifts(mu, tRange, reach);
  std::optional<VanHoveFamily> family = params.family;
  if (kind == NormKind::besicovitch && !family) {
    const double half = std::min(-region.lo, region.hi);
    if (!(half > 0.0)) throw SupportError("no centered averaging interval fits the known region");
    family = VanHoveFamily::linear(half / params.nMax);
  }
  const ProbeSeminorm probe =
      kind == NormKind::smoothedSup
          ? ProbeSeminorm::grid(region.expanded(params.tentWidth), params.tentWidth,
                                std::min(0.05, params.tentWidth / 5.0))
          : ProbeSeminorm{};
  const Window kSearch{region.lo, region.hi - params.kLen};
  if (kind == NormKind::kNorm && !(kSearch.lo < kSearch.hi)) {
    throw SupportError("known region shorter than the kNorm window");
  }

  scan.values.assign(scan.ts.size(), 0.0);
  std::exception_ptr failure;
  const auto count = static_cast<std::ptrdiff_t>(scan.ts.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t j = 0; j < count; ++j) {
    try {
      const auto i = static_cast<std::size_t>(j);
      const Measure shifted = translate(mu, scan.ts[i]);
      double v = 0.0;
      switch (kind) {
        case NormKind::kNorm:
          v = kNormDistance(mu, shifted, params.kLen, kSearch);
          break;
        case NormKind::smoothedSup:
          v = probeDistance(restrict(mu, region.expanded(params.tentWidth)),
                            restrict(shifted, region.expanded(params.tentWidth)), probe);
          break;
        case NormKind::besicovitch:
          v = smoothedBesicovitchDistance(mu, shifted, params.tentWidth, params.p, *family,
                                          params.nMax)
                  .value;
          break;
      }
      scan.values[i] = v;
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  for (std::size_t i = 0; i < scan.ts.size(); ++i) {
    if (scan.values[i] < eps) scan.periods.push_back(scan.ts[i]);
  }
  if (tRange.contains(0.0) || tRange.hi == 0.0) scan.periods.push_back(0.0);
  std::sort(scan.periods.begin(), scan.periods.end());
  scan.periods.erase(std::unique(scan.periods.begin(), scan.periods.end()), scan.periods.end());

  double prev = tRange.lo;
  for (double t : scan.periods) {
    scan.maxGap = std::max(scan.maxGap, t - prev);
    prev = t;
  }
  scan.maxGap = std::max(scan.maxGap, tRange.hi - prev);
  return scan;
}

}  // namespace eberlein
