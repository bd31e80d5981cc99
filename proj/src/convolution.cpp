#include "eberlein/convolution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "eberlein/errors.hpp"
#include "eberlein/kernels.hpp"

namespace eberlein {

namespace {

// Pairs below this many multiply-adds run on the calling thread.
constexpr double kParallelWorkThreshold = 1e6;

std::vector<Atom> clusterPairs(std::vector<PairTerm> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const PairTerm& x, const PairTerm& y) { return x.position < y.position; });
  std::vector<Atom> atoms;
  std::size_t i = 0;
  while (i < terms.size()) {
    std::size_t j = i + 1;
    while (j < terms.size() && terms[j].position - terms[j - 1].position <=
                                   coalescingTolerance(terms[j - 1].position, terms[j].position)) {
      ++j;
    }
    const double lo = terms[i].position;
    const double hi = terms[j - 1].position;
    // Sum in an order fixed by the weights alone, invariant under
    // conjugation, so that reflected and swapped products agree bit for bit.
    if (j - i > 1) {
      std::sort(terms.begin() + static_cast<std::ptrdiff_t>(i),
                terms.begin() + static_cast<std::ptrdiff_t>(j),
                [](const PairTerm& x, const PairTerm& y) {
                  const double xr = x.weight.real(), yr = y.weight.real();
                  if (xr != yr) return xr < yr;
                  const double xi = std::abs(x.weight.imag()), yi = std::abs(y.weight.imag());
                  if (xi != yi) return xi < yi;
                  return x.first < y.first;
                });
    }
    Complex w{};
    for (std::size_t m = i; m < j; ++m) w += terms[m].weight;
    atoms.push_back({j - i > 1 ? 0.5 * (lo + hi) : lo, w});
    i = j;
  }
  return atoms;
}

// Integral over (-inf, x] of the convolution of the indicators of [0, w1)
// and [0, w2).
double boxConvolutionCdf(double x, double w1, double w2) {
  x = std::clamp(x, 0.0, w1 + w2);
  auto r = [](double y) { return y > 0.0 ? 0.5 * y * y : 0.0; };
  return r(x) - r(x - w1) - r(x - w2) + r(x - w1 - w2);
}

class OutputGrid {
 public:
  OutputGrid(const Window& out, double step)
      : origin_(out.lo), step_(step),
        values_(static_cast<std::size_t>(std::max(1.0, std::ceil(out.length() / step)))) {}

  /// Adds `mass` spread uniformly over [lo, lo + width).
  void deposit(double lo, double width, Complex mass) {
    depositLinear(lo, width, mass / width, mass / width);
  }

  /// Adds the linear density running from `left` at lo to `right` at lo + width.
  void depositLinear(double lo, double width, Complex left, Complex right) {
    const double offset = (lo - origin_) / step_;
    const double nearest = std::nearbyint(offset);
    if (std::abs(width - step_) <= 1e-9 * step_ && std::abs(offset - nearest) <= 1e-6) {
      if (nearest >= 0.0 && nearest < static_cast<double>(values_.size())) {
        values_[static_cast<std::size_t>(nearest)] += 0.5 * (left + right);
      }
      return;
    }
    const double hi = lo + width;
    const Complex slope = (right - left) / width;
    for (double j = std::max(0.0, std::floor(offset)); j < static_cast<double>(values_.size());
         j += 1.0) {
      const double clo = origin_ + j * step_;
      if (clo >= hi) break;
      const double x0 = std::max(lo, clo);
      const double x1 = std::min(hi, clo + step_);
      if (x1 > x0) {
        const Complex mid = left + slope * (0.5 * (x0 + x1) - lo);
        values_[static_cast<std::size_t>(j)] += mid * ((x1 - x0) / step_);
      }
    }
  }

  /// Adds c * (indicator of [p, p + w1)) * (indicator of [q, q + w2)).
  void depositBoxProduct(double p, double w1, double q, double w2, Complex c) {
    const double lo = p + q;
    const double hi = lo + w1 + w2;
    for (double j = std::max(0.0, std::floor((lo - origin_) / step_));
         j < static_cast<double>(values_.size()); j += 1.0) {
      const double clo = origin_ + j * step_;
      if (clo >= hi) break;
      const double m = boxConvolutionCdf(clo + step_ - lo, w1, w2) -
                       boxConvolutionCdf(clo - lo, w1, w2);
      if (m != 0.0) values_[static_cast<std::size_t>(j)] += c * (m / step_);
    }
  }

  DensitySignal signal() && { return DensitySignal{origin_, step_, std::move(values_)}; }

 private:
  double origin_;
  double step_;
  std::vector<Complex> values_;
};

double outputStep(const Measure& mu, const Measure& nu, const ConvolutionOptions& options) {
  if (options.densityStep > 0.0) return options.densityStep;
  double finest = std::numeric_limits<double>::infinity();
  double finestAny = finest;
  for (const auto* m : {&mu, &nu}) {
    for (const auto& d : m->density()) {
      finestAny = std::min(finestAny, d.step);
      if (d.size() >= 2) finest = std::min(finest, d.step);
    }
  }
  return std::isfinite(finest) ? finest : finestAny;
}

// Index range [i0, i1) of cells of d, shifted by `shift`, that meet `out`.
std::pair<std::size_t, std::size_t> cellsMeeting(const DensitySignal& d, double shift,
                                                 const Window& out) {
  const double first = std::floor((out.lo - d.origin - shift) / d.step) - 1.0;
  const double last = std::ceil((out.hi - d.origin - shift) / d.step) + 1.0;
  const auto i0 = static_cast<std::size_t>(std::clamp(first, 0.0, static_cast<double>(d.size())));
  const auto i1 = static_cast<std::size_t>(std::clamp(last, 0.0, static_cast<double>(d.size())));
  return {i0, i1};
}

void atomsTimesDensity(std::span<const Atom> atoms, const std::vector<DensitySignal>& density,
                       const Window& out, OutputGrid& grid) {
  for (const auto& d : density) {
    for (const auto& a : atoms) {
      const auto [i0, i1] = cellsMeeting(d, a.position, out);
      for (std::size_t i = i0; i < i1; ++i) {
        grid.deposit(d.cellLo(i) + a.position, d.step, a.weight * d.samples[i] * d.step);
      }
    }
  }
}

// Cell pairs above this count fall back to resampling onto a common step.
constexpr double kExactPairLimit = 4e6;

void densityTimesDensity(const DensitySignal& x, const DensitySignal& y, const Window& out,
                         OutputGrid& grid) {
  const DensitySignal* a = &x;
  const DensitySignal* b = &y;
  DensitySignal resampled;
  if (std::abs(a->step - b->step) > 1e-12 * std::max(a->step, b->step)) {
    if (static_cast<double>(a->size()) * static_cast<double>(b->size()) <= kExactPairLimit) {
      // exact: every pair of cells convolves to a trapezoid
      for (std::size_t i = 0; i < a->size(); ++i) {
        const double p = a->cellLo(i);
        if (p + b->origin >= out.hi) break;
        const auto [j0, j1] = cellsMeeting(*b, p, Window{out.lo - a->step, out.hi});
        for (std::size_t j = j0; j < j1; ++j) {
          const Complex c = a->samples[i] * b->samples[j];
          if (c != Complex{}) grid.depositBoxProduct(p, a->step, b->cellLo(j), b->step, c);
        }
      }
      return;
    }
    // resample onto the finer step unless the finer segment is a lone clipped cell
    const DensitySignal* fine = a->step < b->step ? a : b;
    const DensitySignal* coarse = fine == a ? b : a;
    const DensitySignal* target = fine->size() == 1 ? coarse : fine;
    const DensitySignal* moved = target == a ? b : a;
    resampled = resample(*moved, target->step, moved->origin);
    if (moved == a) {
      a = &resampled;
    } else {
      b = &resampled;
    }
  }
  const double h = a->step;
  const double base = a->origin + b->origin;
  const std::size_t na = a->size();
  const std::size_t nb = b->size();
  // the convolution is linear between the knots base + k h; the knot at
  // base + (k + 1) h carries v_k
  const std::size_t cells = na + nb;
  const double kLoD = std::floor((out.lo - base) / h) - 1.0;
  const double kHiD = std::ceil((out.hi - base) / h) + 1.0;
  if (kHiD < 0.0 || kLoD > static_cast<double>(cells)) return;
  const auto kLo = static_cast<std::size_t>(std::max(0.0, kLoD));
  const auto kHi = std::min(cells - 1, static_cast<std::size_t>(kHiD));
  if (kLo > kHi) return;
  const std::size_t vLo = kLo == 0 ? 0 : kLo - 1;
  const std::size_t vHi = std::min(kHi, na + nb - 2);
  std::vector<Complex> v;
  if (vLo <= vHi) {
    const double work = static_cast<double>(vHi - vLo + 1) * static_cast<double>(std::min(na, nb));
    v = work > kParallelWorkThreshold
            ? parallel::sampleConvolution(a->samples, b->samples, h, vLo, vHi)
            : serial::sampleConvolution(a->samples, b->samples, h, vLo, vHi);
  }
  auto knot = [&](std::size_t k) -> Complex {  // value at base + k h
    if (k == 0) return {};
    const std::size_t idx = k - 1;
    if (idx < vLo || idx > vHi) return {};
    return v[idx - vLo];
  };
  for (std::size_t k = kLo; k <= kHi; ++k) {
    const Complex left = knot(k);
    const Complex right = knot(k + 1);
    if (left != Complex{} || right != Complex{}) {
      grid.depositLinear(base + static_cast<double>(k) * h, h, left, right);
    }
  }
}

}  // namespace

Measure convolveFinite(const Measure& mu, const Measure& nu, const Window& out,
                       const ConvolutionOptions& options) {
  if (!mu.compact() || !nu.compact()) {
    throw SupportError("convolveFinite needs compactly supported inputs; restrict them first");
  }
  const auto terms = parallel::atomPairs(mu.atoms(), nu.atoms(), out);
  std::vector<Atom> atoms = clusterPairs(terms);

  std::vector<DensitySignal> density;
  if (!mu.density().empty() || !nu.density().empty()) {
    OutputGrid grid(out, outputStep(mu, nu, options));
    atomsTimesDensity(mu.atoms(), nu.density(), out, grid);
    atomsTimesDensity(nu.atoms(), mu.density(), out, grid);

    const auto& db = nu.density();
    std::vector<std::size_t> order(db.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return db[i].origin < db[j].origin; });
    double maxLen = 0.0;
    for (const auto& d : db) maxLen = std::max(maxLen, d.end() - d.origin);
    std::vector<double> origins;
    for (auto i : order) origins.push_back(db[i].origin);

    for (const auto& da : mu.density()) {
      // db.origin in (out.lo - da.end() - maxLen, out.hi - da.origin)
      auto first = std::lower_bound(origins.begin(), origins.end(), out.lo - da.end() - maxLen);
      auto last = std::upper_bound(first, origins.end(), out.hi - da.origin);
      for (auto it = first; it != last; ++it) {
        const auto& dbi = db[order[static_cast<std::size_t>(it - origins.begin())]];
        if (da.origin + dbi.origin >= out.hi || da.end() + dbi.end() <= out.lo) continue;
        densityTimesDensity(da, dbi, out, grid);
      }
    }
    density.push_back(std::move(grid).signal());
  }
  const Measure raw(std::move(atoms), std::move(density));
  return restrict(raw, out).withSampledOn(out);
}

}  // namespace eberlein
