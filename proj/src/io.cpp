#include "eberlein/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "eberlein/errors.hpp"

namespace eberlein::io {

namespace {

double toNumber(const std::string& s, const std::string& context) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ValidationError("bad number '" + s + "' in '" + context + "'");
  }
}

long long toInteger(const std::string& s, const std::string& context) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ValidationError("bad integer '" + s + "' in '" + context + "'");
  }
}

std::pair<long long, long long> parseRange(const std::string& s, const std::string& context) {
  const auto dots = s.find("..");
  if (dots == std::string::npos) throw ValidationError("expected A..B in '" + context + "'");
  const long long a = toInteger(s.substr(0, dots), context);
  const long long b = toInteger(s.substr(dots + 2), context);
  if (b < a || b - a > 1'000'000) throw ValidationError("bad range in '" + context + "'");
  return {a, b};
}

// Split at top-level commas, ignoring those inside parentheses.
std::vector<std::string> splitTopLevel(const std::string& s) {
  std::vector<std::string> parts;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

Complex complexFrom(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2) return {j[0].get<double>(), j[1].get<double>()};
  throw ValidationError("complex values are numbers or [re, im]");
}

DensitySignal segmentFromJson(const Json& j) {
  DensitySignal d;
  d.origin = j.at("origin").get<double>();
  d.step = j.at("step").get<double>();
  for (const auto& v : j.at("samples")) d.samples.push_back(complexFrom(v));
  return d;
}

}  // namespace

std::string formatNumber(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Json toJson(const Measure& mu) {
  Json atoms = Json::array();
  for (const auto& a : mu.atoms()) atoms.push_back({a.position, a.weight.real(), a.weight.imag()});
  Json density = nullptr;
  if (!mu.density().empty()) {
    density = Json::array();
    for (const auto& d : mu.density()) {
      Json samples = Json::array();
      for (const auto& v : d.samples) samples.push_back({v.real(), v.imag()});
      density.push_back({{"origin", d.origin}, {"step", d.step}, {"samples", std::move(samples)}});
    }
  }
  Json window = nullptr;
  if (auto w = mu.sampledOn()) window = {w->lo, w->hi};
  return {{"atoms", std::move(atoms)}, {"density", std::move(density)}, {"window", std::move(window)}};
}

Measure measureFromJson(const Json& j) {
  if (!j.is_object()) throw ValidationError("a measure is a JSON object");
  try {
    std::vector<Atom> atoms;
    if (j.contains("atoms")) {
      for (const auto& a : j.at("atoms")) {
        if (!a.is_array() || a.size() < 2 || a.size() > 3) {
          throw ValidationError("atoms are [position, re] or [position, re, im]");
        }
        atoms.push_back({a[0].get<double>(), {a[1].get<double>(), a.size() == 3 ? a[2].get<double>() : 0.0}});
      }
    }
    std::vector<DensitySignal> density;
    if (j.contains("density") && !j.at("density").is_null()) {
      const auto& d = j.at("density");
      if (d.is_array()) {
        for (const auto& s : d) density.push_back(segmentFromJson(s));
      } else {
        density.push_back(segmentFromJson(d));
      }
    }
    std::optional<Window> window;
    if (j.contains("window") && !j.at("window").is_null()) {
      const auto& w = j.at("window");
      window = Window::make(w.at(0).get<double>(), w.at(1).get<double>());
    }
    return Measure(std::move(atoms), std::move(density), window);
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("malformed measure JSON: ") + e.what());
  }
}

std::string toCsv(const Measure& mu) {
  std::ostringstream os;
  os << "kind,position,step,re,im\n";
  for (const auto& a : mu.atoms()) {
    os << "atom," << formatNumber(a.position) << ",," << formatNumber(a.weight.real()) << ','
       << formatNumber(a.weight.imag()) << '\n';
  }
  for (const auto& d : mu.density()) {
    for (std::size_t i = 0; i < d.size(); ++i) {
      os << "cell," << formatNumber(d.cellLo(i)) << ',' << formatNumber(d.step) << ','
         << formatNumber(d.samples[i].real()) << ',' << formatNumber(d.samples[i].imag()) << '\n';
    }
  }
  return os.str();
}

Json toJson(const ConvergenceReport& report) {
  Json stages = Json::array();
  for (const auto& s : report.stages) {
    Json d = nullptr;
    if (s.distance) d = *s.distance;
    stages.push_back({{"n", s.n}, {"length", s.length}, {"distance", d}});
  }
  return {{"stages", std::move(stages)},
          {"converged", report.converged},
          {"finalN", report.finalN},
          {"threshold", report.threshold},
          {"metric", report.metric}};
}

Json toJson(const GeneratorSpec& spec) {
  Json j{{"kind", GeneratorSpec::kindName(spec.kind)}, {"window", {spec.window.lo, spec.window.hi}}};
  using K = GeneratorSpec::Kind;
  switch (spec.kind) {
    case K::lattice:
      j["spacing"] = spec.spacing;
      j["weight"] = {spec.weight.real(), spec.weight.imag()};
      break;
    case K::incommensurate:
    case K::incommensurateLimit:
      j["alpha"] = spec.alpha;
      break;
    case K::bernoulli:
      j["p"] = spec.p;
      j["values"] = {spec.v1, spec.v0};
      j["seed"] = spec.seed;
      break;
    case K::fibonacci:
      j["tiles"] = spec.tiles == GeneratorSpec::TileSet::a   ? "a"
                   : spec.tiles == GeneratorSpec::TileSet::b ? "b"
                                                             : "both";
      break;
    case K::shrinkingBump:
      break;
    case K::trigDensity: {
      j["step"] = spec.step;
      Json terms = Json::array();
      for (const auto& t : spec.poly.terms) {
        terms.push_back({t.frequency, t.coefficient.real(), t.coefficient.imag()});
      }
      j["terms"] = std::move(terms);
      break;
    }
  }
  return j;
}

GeneratorSpec generatorSpecFromJson(const Json& j) {
  try {
    GeneratorSpec g;
    g.kind = GeneratorSpec::parseKind(j.at("kind").get<std::string>());
    g.window = Window::make(j.at("window").at(0).get<double>(), j.at("window").at(1).get<double>());
    using K = GeneratorSpec::Kind;
    switch (g.kind) {
      case K::lattice:
        g.spacing = j.value("spacing", 1.0);
        if (j.contains("weight")) g.weight = complexFrom(j.at("weight"));
        break;
      case K::incommensurate:
      case K::incommensurateLimit:
        g.alpha = j.value("alpha", g.alpha);
        break;
      case K::bernoulli:
        g.p = j.value("p", 0.5);
        if (j.contains("values")) {
          g.v1 = j.at("values").at(0).get<double>();
          g.v0 = j.at("values").at(1).get<double>();
        }
        g.seed = j.value("seed", std::uint64_t{42});
        break;
      case K::fibonacci: {
        const auto t = j.value("tiles", std::string("both"));
        g.tiles = t == "a" ? GeneratorSpec::TileSet::a
                  : t == "b" ? GeneratorSpec::TileSet::b
                             : GeneratorSpec::TileSet::both;
        break;
      }
      case K::shrinkingBump:
        break;
      case K::trigDensity: {
        g.step = j.value("step", 0.01);
        std::vector<TrigPolynomial::Term> terms;
        for (const auto& t : j.at("terms")) {
          terms.push_back({t.at(0).get<double>(), {t.at(1).get<double>(), t.at(2).get<double>()}});
        }
        g.poly = TrigPolynomial::make(std::move(terms));
        break;
      }
    }
    return g;
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("malformed generator JSON: ") + e.what());
  }
}

Json readJson(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw ValidationError("'" + path + "' is not valid JSON: " + e.what());
  }
}

Measure readMeasure(const std::string& path) { return measureFromJson(readJson(path)); }

void writeText(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write '" + path + "'");
  out << text;
  if (!out) throw ValidationError("write to '" + path + "' failed");
}

Window parseWindow(const std::string& text) {
  // the separator is the first ':' not starting a number's sign
  const auto colon = text.find(':', 1);
  if (colon == std::string::npos) throw ValidationError("window must be LO:HI, got '" + text + "'");
  return Window::make(toNumber(text.substr(0, colon), text), toNumber(text.substr(colon + 1), text));
}

std::vector<double> parseFrequencySet(const std::string& raw) {
  const std::string text = trim(raw);
  if (text.empty()) throw ValidationError("empty frequency set");
  std::vector<double> out;
  if (text.rfind("union(", 0) == 0) {
    if (text.back() != ')') throw ValidationError("unbalanced union in '" + text + "'");
    for (const auto& part : splitTopLevel(text.substr(6, text.size() - 7))) {
      const auto sub = parseFrequencySet(part);
      out.insert(out.end(), sub.begin(), sub.end());
    }
  } else if (text.rfind("int:", 0) == 0) {
    const auto [a, b] = parseRange(text.substr(4), text);
    for (long long j = a; j <= b; ++j) out.push_back(static_cast<double>(j));
  } else if (text.rfind("alpha:", 0) == 0) {
    const auto colon = text.find(':', 6);
    if (colon == std::string::npos) throw ValidationError("expected alpha:X:A..B, got '" + text + "'");
    const double alpha = toNumber(text.substr(6, colon - 6), text);
    if (!(alpha > 0.0)) throw ValidationError("alpha must be positive in '" + text + "'");
    const auto [a, b] = parseRange(text.substr(colon + 1), text);
    for (long long j = a; j <= b; ++j) out.push_back(static_cast<double>(j) / alpha);
  } else if (text.find(',') != std::string::npos) {
    for (const auto& part : splitTopLevel(text)) {
      const auto sub = parseFrequencySet(part);
      out.insert(out.end(), sub.begin(), sub.end());
    }
  } else {
    out.push_back(toNumber(text, text));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end(),
                        [](double a, double b) { return std::abs(a - b) <= 1e-12; }),
            out.end());
  return out;
}

}  // namespace eberlein::io
