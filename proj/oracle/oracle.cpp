#include "oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "eberlein/errors.hpp"

namespace eberlein::oracle {

namespace {

struct Point {
  double x;
  Complex w;
};

// atoms and cell midpoints of mu inside A, with cells clipped to A
void collect(const Measure& mu, const Window& A, std::vector<Point>& atoms,
             std::vector<Point>& cells, double& finest) {
  for (const auto& a : mu.atoms()) {
    if (A.lo <= a.position && a.position < A.hi) atoms.push_back({a.position, a.weight});
  }
  for (const auto& d : mu.density()) {
    if (d.samples.size() > 1) finest = std::min(finest, d.step);
    for (std::size_t i = 0; i < d.samples.size(); ++i) {
      const double lo = std::max(A.lo, d.origin + static_cast<double>(i) * d.step);
      const double hi = std::min(A.hi, d.origin + static_cast<double>(i + 1) * d.step);
      if (lo < hi) cells.push_back({0.5 * (lo + hi), d.samples[i] * (hi - lo)});
    }
  }
}

}  // namespace

Measure bruteTwisted(const Measure& mu, const Measure& nu, const Window& A, const Window& out,
                     double densityStep) {
  if (mu.atoms().size() > kMaxAtoms || nu.atoms().size() > kMaxAtoms) {
    throw ValidationError("oracle size cap exceeded");
  }
  std::vector<Point> ma, mc, na, nc;
  double finest = std::numeric_limits<double>::infinity();
  collect(mu, A, ma, mc, finest);
  collect(nu, A, na, nc, finest);
  const double scale = 1.0 / (A.hi - A.lo);

  std::vector<Point> merged;
  for (const auto& s : ma) {
    for (const auto& r : na) {
      const double x = s.x - r.x;
      if (!(out.lo <= x && x < out.hi)) continue;
      const Complex w = s.w * std::conj(r.w) * scale;
      bool found = false;
      for (auto& m : merged) {
        const double tol = 1e-9 * std::max({1.0, std::abs(m.x), std::abs(x)});
        if (std::abs(m.x - x) <= tol) {
          m.w += w;
          found = true;
          break;
        }
      }
      if (!found) merged.push_back({x, w});
    }
  }
  std::vector<Atom> atoms;
  for (const auto& m : merged) {
    if (m.w != Complex{}) atoms.push_back({m.x, m.w});
  }

  std::vector<DensitySignal> density;
  if (!mc.empty() || !nc.empty()) {
    double h = densityStep > 0.0 ? densityStep : finest;
    if (!std::isfinite(h)) h = out.hi - out.lo;
    const auto cells = static_cast<std::size_t>(std::ceil((out.hi - out.lo) / h));
    std::vector<Complex> mass(cells);
    auto deposit = [&](double x, Complex m) {
      if (!(out.lo <= x && x < out.hi)) return;
      const auto i = std::min(cells - 1, static_cast<std::size_t>((x - out.lo) / h));
      mass[i] += m;
    };
    for (const auto& s : ma) for (const auto& r : nc) deposit(s.x - r.x, s.w * std::conj(r.w) * scale);
    for (const auto& s : mc) for (const auto& r : na) deposit(s.x - r.x, s.w * std::conj(r.w) * scale);
    for (const auto& s : mc) for (const auto& r : nc) deposit(s.x - r.x, s.w * std::conj(r.w) * scale);
    DensitySignal d{out.lo, h, {}};
    for (auto& m : mass) d.samples.push_back(m / h);
    density.push_back(std::move(d));
  }
  return Measure(std::move(atoms), std::move(density), out);
}

Complex bruteFB(const Measure& mu, double k, const Window& A) {
  const double twoPi = 2.0 * std::numbers::pi;
  Complex sum{};
  for (const auto& a : mu.atoms()) {
    if (A.lo <= a.position && a.position < A.hi) {
      sum += a.weight * std::exp(Complex(0.0, -twoPi * k * a.position));
    }
  }
  for (const auto& d : mu.density()) {
    for (std::size_t i = 0; i < d.samples.size(); ++i) {
      const double lo = std::max(A.lo, d.origin + static_cast<double>(i) * d.step);
      const double hi = std::min(A.hi, d.origin + static_cast<double>(i + 1) * d.step);
      if (!(lo < hi)) continue;
      if (k == 0.0) {
        sum += d.samples[i] * (hi - lo);
      } else {
        const Complex e1 = std::exp(Complex(0.0, -twoPi * k * hi));
        const Complex e0 = std::exp(Complex(0.0, -twoPi * k * lo));
        sum += d.samples[i] * (e1 - e0) / Complex(0.0, -twoPi * k);
      }
    }
  }
  return sum / (A.hi - A.lo);
}

}  // namespace eberlein::oracle
