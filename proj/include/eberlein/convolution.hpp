#pragma once

#include "eberlein/measure.hpp"

namespace eberlein {

struct ConvolutionOptions {
  /// Step of the output density grid; 0 selects the finest step among the
  /// multi-cell density segments of the inputs.
  double densityStep = 0.0;
};

/// mu * nu restricted to `out`. Both inputs must be compact.
///
///  - point x point: exact double sum over atom pairs; pairs closer than the
///    coalescing tolerance merge, summed in an order fixed by their weights;
///  - point x density: shifted and scaled copies of each segment;
///  - density x density: the exact convolution of the piecewise-constant
///    segments, integrated over the output cells. Segments with different
///    steps are convolved cell pair by cell pair; beyond 4e6 pairs the
///    coarser one is resampled onto the finer step instead (not exact).
///
/// Density contributions are deposited on one grid starting at out.lo.
/// The result is a view known on `out`.
Measure convolveFinite(const Measure& mu, const Measure& nu, const Window& out,
                       const ConvolutionOptions& options = {});

}  // namespace eberlein
