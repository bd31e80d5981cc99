#pragma once

#include <optional>
#include <string>
#include <vector>

#include "eberlein/measure.hpp"
#include "eberlein/vanhove.hpp"

namespace eberlein {

struct BesicovitchEstimate {
  /// Max over the last ceil(nMax/4) stage values, a proxy for the limsup.
  double value = 0.0;
  std::vector<double> stageLengths;
  /// ((1/|A_n|) int_{A_n} |f|^p)^(1/p) for n = 1..nMax.
  std::vector<double> stageValues;
};

/// Besicovitch p-seminorm of a measure without atoms, read as the function
/// given by its density segments. Exact for piecewise-constant densities.
BesicovitchEstimate besicovitchSeminorm(const Measure& f, double p, const VanHoveFamily& family,
                                        int nMax);

/// Besicovitch p-seminorm of mu * tent, sampled at midpoints of a grid of
/// step tentWidth/16.
BesicovitchEstimate smoothedBesicovitch(const Measure& mu, double tentWidth, double p,
                                        const VanHoveFamily& family, int nMax);

/// smoothedBesicovitch of mu - nu.
BesicovitchEstimate smoothedBesicovitchDistance(const Measure& mu, const Measure& nu,
                                                double tentWidth, double p,
                                                const VanHoveFamily& family, int nMax);

/// sup over t in searchWindow of |mu - nu|([t, t + kLen)), exact.
double kNormDistance(const Measure& mu, const Measure& nu, double kLen, const Window& searchWindow);

enum class NormKind { besicovitch, kNorm, smoothedSup };

struct ScanParams {
  double p = 1.0;            // besicovitch exponent
  double kLen = 1.0;         // kNorm window length
  double tentWidth = 0.25;   // smoothing for besicovitch and smoothedSup
  /// Averaging family for the besicovitch norm; derived from the region
  /// where mu and all its scanned translates are known when empty.
  std::optional<VanHoveFamily> family;
  int nMax = 16;
};

struct AlmostPeriodScan {
  double epsilon = 0.0;
  NormKind normKind = NormKind::kNorm;
  Window scanRange;
  double tStep = 0.0;
  std::vector<double> ts;
  std::vector<double> values;
  /// Sorted translations with value < epsilon; 0 is always included when it
  /// lies in the range.
  std::vector<double> periods;
  /// Largest gap between consecutive periods, range endpoints included.
  double maxGap = 0.0;
};

/// Evaluates ||mu - translate(mu, t)|| on the grid tRange.lo + j*tStep and
/// collects the eps-almost periods. Translations are compared on the region
/// where both mu and its translate are known.
AlmostPeriodScan almostPeriodScan(const Measure& mu, double eps, NormKind kind,
                                  const ScanParams& params, const Window& tRange, double tStep);

std::string toString(NormKind kind);

}  // namespace eberlein
