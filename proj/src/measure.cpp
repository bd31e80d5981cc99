#include "eberlein/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "eberlein/errors.hpp"

namespace eberlein {

Window Window::make(double lo, double hi) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
    throw ValidationError("invalid window [" + std::to_string(lo) + ", " + std::to_string(hi) + ")");
  }
  return {lo, hi};
}

std::optional<Window> intersect(const Window& a, const Window& b) {
  const double lo = std::max(a.lo, b.lo);
  const double hi = std::min(a.hi, b.hi);
  if (!(lo < hi)) return std::nullopt;
  return Window{lo, hi};
}

Complex DensitySignal::mass() const {
  CompensatedSum s;
  for (const auto& v : samples) s.add(v);
  return s.value() * step;
}

double coalescingTolerance(double a, double b) {
  return 1e-9 * std::max({1.0, std::abs(a), std::abs(b)});
}

std::vector<Atom> coalesce(std::vector<Atom> atoms) {
  std::stable_sort(atoms.begin(), atoms.end(),
                   [](const Atom& x, const Atom& y) { return x.position < y.position; });
  std::vector<Atom> out;
  out.reserve(atoms.size());
  std::size_t i = 0;
  while (i < atoms.size()) {
    std::size_t j = i + 1;
    Complex w = atoms[i].weight;
    while (j < atoms.size() &&
           atoms[j].position - atoms[j - 1].position <=
               coalescingTolerance(atoms[j - 1].position, atoms[j].position)) {
      w += atoms[j].weight;
      ++j;
    }
    if (w != Complex{}) {
      const double pos = j == i + 1 ? atoms[i].position
                                    : 0.5 * (atoms[i].position + atoms[j - 1].position);
      out.push_back({pos, w});
    }
    i = j;
  }
  return out;
}

Measure::Measure(std::vector<Atom> atoms, std::vector<DensitySignal> density,
                 std::optional<Window> sampledOn)
    : sampledOn_(sampledOn) {
  for (const auto& a : atoms) {
    if (!std::isfinite(a.position) || !std::isfinite(a.weight.real()) ||
        !std::isfinite(a.weight.imag())) {
      throw ValidationError("atom with non-finite position or weight");
    }
  }
  for (auto& d : density) {
    if (!(d.step > 0.0) || !std::isfinite(d.step) || !std::isfinite(d.origin)) {
      throw ValidationError("density segment needs a finite origin and step > 0");
    }
    for (const auto& v : d.samples) {
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
        throw ValidationError("density segment with non-finite sample");
      }
    }
    if (!d.samples.empty()) density_.push_back(std::move(d));
  }
  std::stable_sort(density_.begin(), density_.end(),
                   [](const DensitySignal& a, const DensitySignal& b) { return a.origin < b.origin; });
  for (const auto& d : density_) longestSegment_ = std::max(longestSegment_, d.end() - d.origin);
  atoms_ = coalesce(std::move(atoms));
  if (auto h = hull()) {
    kBound_ = slidingTotalVariationSup(*this, 1.0, Window{h->lo - 1.0, h->hi});
  }
}

std::optional<Window> Measure::hull() const {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  if (!atoms_.empty()) {
    lo = atoms_.front().position;
    hi = atoms_.back().position;
  }
  for (const auto& d : density_) {
    lo = std::min(lo, d.origin);
    hi = std::max(hi, d.end());
  }
  if (lo > hi) return std::nullopt;
  // half-open: make sure the last atom lies inside
  return Window{lo, std::nextafter(hi, std::numeric_limits<double>::infinity())};
}

std::pair<std::size_t, std::size_t> Measure::segmentsNear(double lo, double hi) const {
  auto byOrigin = [](const DensitySignal& d, double v) { return d.origin < v; };
  const auto first =
      std::lower_bound(density_.begin(), density_.end(), lo - longestSegment_, byOrigin);
  const auto last = std::lower_bound(first, density_.end(), hi, byOrigin);
  return {static_cast<std::size_t>(first - density_.begin()),
          static_cast<std::size_t>(last - density_.begin())};
}

Complex Measure::totalMass() const {
  CompensatedSum s;
  for (const auto& a : atoms_) s.add(a.weight);
  for (const auto& d : density_) s.add(d.mass());
  return s.value();
}

Measure Measure::scaled(Complex c) const {
  std::vector<Atom> atoms(atoms_.begin(), atoms_.end());
  for (auto& a : atoms) a.weight *= c;
  auto density = density_;
  for (auto& d : density) {
    for (auto& v : d.samples) v *= c;
  }
  return Measure(std::move(atoms), std::move(density), sampledOn_);
}

Measure Measure::withSampledOn(std::optional<Window> w) const {
  Measure m = *this;
  m.sampledOn_ = w;
  return m;
}

namespace {

void clipDensity(const DensitySignal& d, const Window& w, std::vector<DensitySignal>& out) {
  const std::size_t n = d.size();
  if (n == 0 || d.end() <= w.lo || d.origin >= w.hi) return;
  DensitySignal full{0.0, d.step, {}};
  bool started = false;
  auto flush = [&] {
    if (started) out.push_back(std::move(full));
    full = DensitySignal{0.0, d.step, {}};
    started = false;
  };
  // cells strictly before/after the window are skipped by index arithmetic
  const double first = std::floor((w.lo - d.origin) / d.step) - 1.0;
  const double last = std::ceil((w.hi - d.origin) / d.step) + 1.0;
  const std::size_t i0 = first <= 0.0 ? 0 : std::min(n, static_cast<std::size_t>(first));
  const std::size_t i1 = last < 0.0 ? 0 : std::min(n, static_cast<std::size_t>(last));
  const double snap = 1e-9 * d.step;
  for (std::size_t i = i0; i < i1; ++i) {
    const double lo = d.cellLo(i);
    const double hi = d.cellHi(i);
    // edges within snap of a window end count as on it, so rounding in
    // origin + i*step cannot leave slivers
    if (hi <= w.lo + snap || lo >= w.hi - snap) continue;
    if (lo >= w.lo - snap && hi <= w.hi + snap) {
      if (!started) {
        full.origin = lo;
        started = true;
      }
      full.samples.push_back(d.samples[i]);
    } else {
      flush();
      const double a = std::max(lo, w.lo);
      const double b = std::min(hi, w.hi);
      if (a < b) out.push_back(DensitySignal{a, b - a, {d.samples[i]}});
    }
  }
  flush();
}

DensitySignal reflectSignal(const DensitySignal& d, bool conjugate) {
  DensitySignal r{-d.end(), d.step, std::vector<Complex>(d.samples.rbegin(), d.samples.rend())};
  if (conjugate) {
    for (auto& v : r.samples) v = std::conj(v);
  }
  return r;
}

Measure reflect(const Measure& mu, bool conjugate) {
  std::vector<Atom> atoms;
  atoms.reserve(mu.atoms().size());
  for (auto it = mu.atoms().rbegin(); it != mu.atoms().rend(); ++it) {
    atoms.push_back({-it->position, conjugate ? std::conj(it->weight) : it->weight});
  }
  std::vector<DensitySignal> density;
  for (const auto& d : mu.density()) density.push_back(reflectSignal(d, conjugate));
  std::optional<Window> on;
  if (auto s = mu.sampledOn()) on = s->negated();
  return Measure(std::move(atoms), std::move(density), on);
}

bool sameGrid(const DensitySignal& a, const DensitySignal& b) {
  return a.origin == b.origin && a.step == b.step && a.size() == b.size();
}

}  // namespace

Measure restrict(const Measure& mu, const Window& interval) {
  std::vector<Atom> atoms;
  const auto all = mu.atoms();
  auto first = std::lower_bound(all.begin(), all.end(), interval.lo,
                                [](const Atom& a, double x) { return a.position < x; });
  auto last = std::lower_bound(first, all.end(), interval.hi,
                               [](const Atom& a, double x) { return a.position < x; });
  atoms.assign(first, last);
  std::vector<DensitySignal> density;
  for (const auto& d : mu.density()) clipDensity(d, interval, density);
  return Measure(std::move(atoms), std::move(density));
}

Measure reflectTilde(const Measure& mu) { return reflect(mu, true); }

Measure reflectDagger(const Measure& mu) { return reflect(mu, false); }

Measure translate(const Measure& mu, double t) {
  if (!std::isfinite(t)) throw ValidationError("translation must be finite");
  std::vector<Atom> atoms(mu.atoms().begin(), mu.atoms().end());
  for (auto& a : atoms) a.position += t;
  auto density = mu.density();
  for (auto& d : density) d.origin += t;
  std::optional<Window> on;
  if (auto s = mu.sampledOn()) on = s->shifted(t);
  return Measure(std::move(atoms), std::move(density), on);
}

Measure addScaled(const Measure& mu, const Measure& nu, Complex a, Complex b) {
  std::vector<Atom> atoms;
  atoms.reserve(mu.atoms().size() + nu.atoms().size());
  for (const auto& x : mu.atoms()) atoms.push_back({x.position, a * x.weight});
  for (const auto& x : nu.atoms()) atoms.push_back({x.position, b * x.weight});

  std::vector<DensitySignal> density;
  const auto& dm = mu.density();
  const auto& dn = nu.density();
  if (dm.size() == 1 && dn.size() == 1 && sameGrid(dm[0], dn[0])) {
    DensitySignal s{dm[0].origin, dm[0].step, std::vector<Complex>(dm[0].size())};
    for (std::size_t i = 0; i < s.size(); ++i) s.samples[i] = a * dm[0].samples[i] + b * dn[0].samples[i];
    density.push_back(std::move(s));
  } else {
    for (const auto& d : dm) {
      DensitySignal s = d;
      for (auto& v : s.samples) v *= a;
      density.push_back(std::move(s));
    }
    for (const auto& d : dn) {
      DensitySignal s = d;
      for (auto& v : s.samples) v *= b;
      density.push_back(std::move(s));
    }
  }

  std::optional<Window> on;
  const auto sm = mu.sampledOn();
  const auto sn = nu.sampledOn();
  if (sm && sn) {
    on = intersect(*sm, *sn);
    if (!on) throw SupportError("addScaled: sampled windows do not overlap");
  } else {
    on = sm ? sm : sn;
  }
  return Measure(std::move(atoms), std::move(density), on);
}

namespace {

// Piecewise-constant |g| for the summed density, as breakpoints and the
// running integral G at each breakpoint.
struct AbsDensityProfile {
  std::vector<double> x;
  std::vector<double> integral;

  double at(double y) const {
    if (x.empty() || y <= x.front()) return 0.0;
    if (y >= x.back()) return integral.back();
    const auto it = std::upper_bound(x.begin(), x.end(), y);
    const std::size_t j = static_cast<std::size_t>(it - x.begin()) - 1;
    const double slope = (integral[j + 1] - integral[j]) / (x[j + 1] - x[j]);
    return integral[j] + slope * (y - x[j]);
  }
};

AbsDensityProfile absDensityProfile(const std::vector<DensitySignal>& density) {
  AbsDensityProfile p;
  if (density.empty()) return p;
  struct Event {
    double x;
    Complex delta;
  };
  std::vector<Event> events;
  for (const auto& d : density) {
    Complex prev{};
    for (std::size_t i = 0; i < d.size(); ++i) {
      events.push_back({d.cellLo(i), d.samples[i] - prev});
      prev = d.samples[i];
    }
    events.push_back({d.end(), -prev});
  }
  std::stable_sort(events.begin(), events.end(),
                   [](const Event& a, const Event& b) { return a.x < b.x; });
  Complex g{};
  double acc = 0.0;
  std::size_t i = 0;
  while (i < events.size()) {
    const double xi = events[i].x;
    if (!p.x.empty()) acc += std::abs(g) * (xi - p.x.back());
    while (i < events.size() && events[i].x == xi) g += events[i++].delta;
    p.x.push_back(xi);
    p.integral.push_back(acc);
  }
  return p;
}

}  // namespace

double slidingTotalVariationSup(const Measure& mu, double kLen, const Window& search) {
  if (!(kLen > 0.0)) throw ValidationError("window length must be positive");
  const auto atoms = mu.atoms();
  std::vector<double> pos(atoms.size());
  std::vector<double> prefix(atoms.size() + 1, 0.0);
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    pos[i] = atoms[i].position;
    prefix[i + 1] = prefix[i] + std::abs(atoms[i].weight);
  }
  const AbsDensityProfile dens = absDensityProfile(mu.density());

  auto atomic = [&](double x) {
    const auto a = std::lower_bound(pos.begin(), pos.end(), x) - pos.begin();
    const auto b = std::lower_bound(pos.begin(), pos.end(), x + kLen) - pos.begin();
    return prefix[static_cast<std::size_t>(b)] - prefix[static_cast<std::size_t>(a)];
  };
  auto dense = [&](double x) { return dens.at(x + kLen) - dens.at(x); };

  std::vector<double> cand{search.lo, search.hi};
  auto push = [&](double x) {
    if (x >= search.lo && x <= search.hi) cand.push_back(x);
  };
  for (double p : pos) {
    push(p);
    push(p - kLen);
  }
  for (double x : dens.x) {
    push(x);
    push(x - kLen);
  }
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

  double best = 0.0;
  for (std::size_t i = 0; i < cand.size(); ++i) {
    best = std::max(best, atomic(cand[i]) + dense(cand[i]));
    if (i + 1 < cand.size()) {
      // the atomic count is constant on the open gap, the density part linear
      const double mid = 0.5 * (cand[i] + cand[i + 1]);
      best = std::max(best, atomic(mid) + std::max(dense(cand[i]), dense(cand[i + 1])));
    }
  }
  return best;
}

DensitySignal resample(const DensitySignal& d, double step, double origin) {
  if (!(step > 0.0)) throw ValidationError("resample step must be positive");
  DensitySignal out;
  out.step = step;
  if (d.samples.empty()) {
    out.origin = origin;
    return out;
  }
  const double j0 = std::floor((d.origin - origin) / step);
  out.origin = origin + j0 * step;
  const auto count = static_cast<std::size_t>(std::ceil((d.end() - out.origin) / step));
  out.samples.assign(std::max<std::size_t>(count, 1), Complex{});
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double lo = d.cellLo(i);
    const double hi = d.cellHi(i);
    auto j = static_cast<std::size_t>(std::max(0.0, std::floor((lo - out.origin) / step)));
    for (; j < out.size(); ++j) {
      const double clo = out.cellLo(j);
      if (clo >= hi) break;
      const double overlap = std::min(hi, out.cellHi(j)) - std::max(lo, clo);
      if (overlap > 0.0) out.samples[j] += d.samples[i] * (overlap / step);
    }
  }
  return out;
}

}  // namespace eberlein
