#pragma once

#include <string>

#include "eberlein/measure.hpp"

namespace eberlein {

/// Nested averaging intervals A_n with |A_n| -> infinity.
///   linear:    L_n = n * base
///   geometric: L_n = base * ratio^n
/// Centered families use [-L_n, L_n), uncentered ones [0, L_n).
struct VanHoveFamily {
  enum class Kind { linear, geometric };

  Kind kind = Kind::linear;
  double base = 100.0;
  double ratio = 2.0;
  bool centered = true;

  static VanHoveFamily linear(double base, bool centered = true);
  static VanHoveFamily geometric(double base, double ratio, bool centered = true);

  /// "linear:100", "geo:10:2.0", optional ":uncentered" suffix.
  static VanHoveFamily parse(const std::string& spec);
  std::string toString() const;

  double halfLength(int n) const;
  Window interval(int n) const;
  /// |d^K A_n| / |A_n| for K = [-k, k]: an interval has two boundary
  /// points, each contributing a band of width 2k.
  double boundaryRatio(int n, double k) const;
  /// Largest n <= cap whose interval lies in `w`; 0 if none.
  int largestCoveredStage(const Window& w, int cap) const;
};

}  // namespace eberlein
