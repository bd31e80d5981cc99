#include "eberlein/vanhove.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "eberlein/errors.hpp"

namespace eberlein {

VanHoveFamily VanHoveFamily::linear(double base, bool centered) {
  if (!(base > 0.0) || !std::isfinite(base)) throw ValidationError("van Hove base must be > 0");
  return {Kind::linear, base, 2.0, centered};
}

VanHoveFamily VanHoveFamily::geometric(double base, double ratio, bool centered) {
  if (!(base > 0.0) || !std::isfinite(base)) throw ValidationError("van Hove base must be > 0");
  if (!(ratio > 1.0) || !std::isfinite(ratio)) throw ValidationError("geometric ratio must be > 1");
  return {Kind::geometric, base, ratio, centered};
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  return parts;
}

double number(const std::string& s, const std::string& spec) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ValidationError("bad number '" + s + "' in family spec '" + spec + "'");
  }
}

}  // namespace

VanHoveFamily VanHoveFamily::parse(const std::string& spec) {
  auto parts = split(spec, ':');
  bool centered = true;
  if (!parts.empty() && parts.back() == "uncentered") {
    centered = false;
    parts.pop_back();
  }
  if (parts.size() == 2 && parts[0] == "linear") return linear(number(parts[1], spec), centered);
  if (parts.size() == 3 && (parts[0] == "geo" || parts[0] == "geometric")) {
    return geometric(number(parts[1], spec), number(parts[2], spec), centered);
  }
  throw ValidationError("family spec must be linear:L0 or geo:L0:RATIO, got '" + spec + "'");
}

std::string VanHoveFamily::toString() const {
  std::ostringstream os;
  os.precision(17);
  if (kind == Kind::linear) {
    os << "linear:" << base;
  } else {
    os << "geo:" << base << ':' << ratio;
  }
  if (!centered) os << ":uncentered";
  return os.str();
}

double VanHoveFamily::halfLength(int n) const {
  if (n < 1) throw ValidationError("van Hove index must be >= 1");
  const double L = kind == Kind::linear ? n * base : base * std::pow(ratio, n);
  if (!std::isfinite(L) || L > 1e300) throw std::overflow_error("van Hove interval overflows");
  return L;
}

Window VanHoveFamily::interval(int n) const {
  const double L = halfLength(n);
  return centered ? Window{-L, L} : Window{0.0, L};
}

double VanHoveFamily::boundaryRatio(int n, double k) const {
  if (!(k >= 0.0)) throw ValidationError("boundary radius must be >= 0");
  return 4.0 * k / interval(n).length();
}

int VanHoveFamily::largestCoveredStage(const Window& w, int cap) const {
  int best = 0;
  for (int n = 1; n <= cap; ++n) {
    if (!w.covers(interval(n))) break;
    best = n;
  }
  return best;
}

}  // namespace eberlein
