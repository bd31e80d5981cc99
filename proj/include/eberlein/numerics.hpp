#pragma once

#include <cmath>
#include <complex>
#include <numbers>

namespace eberlein {

using Complex = std::complex<double>;

/// exp(-2 pi i k x) with the argument reduced through an fma error term so
/// that large |k x| keeps full relative phase accuracy.
inline Complex conjCharacter(double k, double x) {
  const double prod = k * x;
  const double err = std::fma(k, x, -prod);
  const double frac = (prod - std::nearbyint(prod)) + err;
  const double angle = -2.0 * std::numbers::pi * frac;
  return {std::cos(angle), std::sin(angle)};
}

/// exp(+2 pi i k x).
inline Complex character(double k, double x) { return std::conj(conjCharacter(k, x)); }

inline double sinc(double x) {
  if (std::abs(x) < 1e-4) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

/// Closed form of the integral of exp(-2 pi i k s) over [a, b).
inline Complex conjCharacterIntegral(double k, double a, double b) {
  const double width = b - a;
  if (k == 0.0) return {width, 0.0};
  return width * sinc(std::numbers::pi * k * width) * conjCharacter(k, 0.5 * (a + b));
}

/// Kahan-Babuska-Neumaier compensated complex accumulator.
class CompensatedSum {
 public:
  void add(Complex v) {
    add(sumRe_, compRe_, v.real());
    add(sumIm_, compIm_, v.imag());
  }
  Complex value() const { return {sumRe_ + compRe_, sumIm_ + compIm_}; }

 private:
  static void add(double& sum, double& comp, double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      comp += (sum - t) + v;
    } else {
      comp += (v - t) + sum;
    }
    sum = t;
  }
  double sumRe_ = 0.0, compRe_ = 0.0, sumIm_ = 0.0, compIm_ = 0.0;
};

}  // namespace eberlein
