#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "eberlein/eberlein.hpp"
#include "eberlein/generators.hpp"
#include "eberlein/measure.hpp"

namespace eberlein::io {

using Json = nlohmann::json;

/// {"atoms": [[pos, re, im], ...],
///  "density": null | [{"origin": x, "step": h, "samples": [[re, im], ...]}, ...],
///  "window": null | [lo, hi]}
/// "density" may also be a single segment object on input.
Json toJson(const Measure& mu);
Measure measureFromJson(const Json& j);

/// Rows "atom,position,,re,im" and "cell,lo,step,re,im" under a header,
/// numbers with 17 significant digits.
std::string toCsv(const Measure& mu);

Json toJson(const ConvergenceReport& report);
Json toJson(const GeneratorSpec& spec);
GeneratorSpec generatorSpecFromJson(const Json& j);

Measure readMeasure(const std::string& path);
Json readJson(const std::string& path);
void writeText(const std::string& path, const std::string& text);

/// "LO:HI" into a window.
Window parseWindow(const std::string& text);

/// Frequency sets:
///   "int:A..B"          integers A..B
///   "alpha:X:A..B"      j/X for j = A..B
///   "union(S1,S2,...)"  merged, duplicates within 1e-12 removed
///   "0.5"               a single frequency
std::vector<double> parseFrequencySet(const std::string& text);

/// printf("%.17g").
std::string formatNumber(double v);

}  // namespace eberlein::io
