#pragma once

#include <span>
#include <string>
#include <vector>

#include "eberlein/measure.hpp"
#include "eberlein/smoothing.hpp"

namespace eberlein {

/// Seminorm ||mu||_phi = max over centers c of |(mu * tent)(c)| with a unit
/// mass tent of half-width `tentWidth`.
struct ProbeSeminorm {
  double tentWidth = 0.25;
  std::vector<double> centers;

  /// Centers every `step` from window.lo + tentWidth to window.hi - tentWidth,
  /// so that every probe reads the measure inside `window` only.
  static ProbeSeminorm grid(const Window& window, double tentWidth = 0.25, double step = 0.05);
  /// "W:STEP" over `window`.
  static ProbeSeminorm parse(const std::string& spec, const Window& window);

  SmoothingKernel kernel() const { return SmoothingKernel::tent(tentWidth); }
  /// Smallest half-open window holding the support of every probe tent.
  Window reach() const;
};

/// (mu * tent)(c) at every center. Throws SupportError when a probe reaches
/// outside the region where mu is known.
std::vector<Complex> probeEval(const Measure& mu, const ProbeSeminorm& probe);

double probeNorm(const Measure& mu, const ProbeSeminorm& probe);

/// max_c |((a - b) * tent)(c)|.
double probeDistance(const Measure& a, const Measure& b, const ProbeSeminorm& probe);

/// Local mass around c: w * (mu * tent)(c), i.e. mu integrated against a tent
/// of height one. For an isolated atom this is exactly its weight.
Complex smoothedMass(const Measure& mu, double center, double tentWidth);

/// Hermitian matrix G_ij = (gamma * tent * ~tent)(x_i - x_j), row-major.
std::vector<Complex> smoothedGram(const Measure& gamma, std::span<const double> points,
                                  double tentWidth);

}  // namespace eberlein
