#pragma once

#include <algorithm>
#include <cmath>

namespace eberlein {

/// Compactly supported unit-mass test functions used as probes of the vague
/// topology.
///
///  - tent: (1/w) * max(0, 1 - |x|/w), support [-w, w]
///  - tentAutocorrelation: tent * tent = (1/w) * M4(x/w) with M4 the centered
///    cubic B-spline, support [-2w, 2w]. Used for smoothed Gram matrices.
struct SmoothingKernel {
  enum class Shape { tent, tentAutocorrelation };

  Shape shape = Shape::tent;
  double width = 0.25;

  static SmoothingKernel tent(double w) { return {Shape::tent, w}; }
  static SmoothingKernel tentSquared(double w) { return {Shape::tentAutocorrelation, w}; }

  double radius() const { return shape == Shape::tent ? width : 2.0 * width; }

  double value(double x) const {
    const double u = std::abs(x) / width;
    if (shape == Shape::tent) return u >= 1.0 ? 0.0 : (1.0 - u) / width;
    if (u >= 2.0) return 0.0;
    if (u >= 1.0) return (2.0 - u) * (2.0 - u) * (2.0 - u) / (6.0 * width);
    return (2.0 / 3.0 - u * u + 0.5 * u * u * u) / width;
  }

  /// Integral of value(x - y) dy over the cell [a, b).
  double cellIntegral(double x, double a, double b) const {
    return cdf((x - a) / width) - cdf((x - b) / width);
  }

 private:
  // cumulative distribution of the unit-width shape
  double cdf(double u) const {
    if (shape == Shape::tent) {
      if (u <= -1.0) return 0.0;
      if (u >= 1.0) return 1.0;
      return u <= 0.0 ? 0.5 * (1.0 + u) * (1.0 + u) : 1.0 - 0.5 * (1.0 - u) * (1.0 - u);
    }
    const double a = std::min(std::abs(u), 2.0);
    double half;
    if (a <= 1.0) {
      half = 2.0 * a / 3.0 - a * a * a / 3.0 + a * a * a * a / 8.0;
    } else {
      const double r = 2.0 - a;
      half = 0.5 - r * r * r * r / 24.0;
    }
    return u < 0.0 ? 0.5 - half : 0.5 + half;
  }
};

}  // namespace eberlein
