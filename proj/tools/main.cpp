// Command-line front end: gen, convolve, fbcoeff, diffract, apscan, verify.
//
// Exit codes: 0 success, 1 invariant failure (verify), 2 invalid input,
// 3 computation finished without meeting its convergence tolerance.

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "eberlein/apdiag.hpp"
#include "eberlein/eberlein.hpp"
#include "eberlein/errors.hpp"
#include "eberlein/fourier.hpp"
#include "eberlein/generators.hpp"
#include "eberlein/io.hpp"
#include "eberlein/probe.hpp"
#include "verify.hpp"

namespace {

using namespace eberlein;
using io::Json;

constexpr int kOk = 0;
constexpr int kInvariantFailure = 1;
constexpr int kInvalid = 2;
constexpr int kNotConverged = 3;

struct GenArgs {
  std::string kind, params, window, out, spec, saveSpec;
  std::uint64_t seed = 42;
};

struct ConvolveArgs {
  std::string mu, nu, family = "linear:100", out, probe = "0.25:0.05", emit = "json", output,
                      report;
  double tol = 1e-3;
  int nmax = 64;
  double densityStep = 0.0;
};

struct FbArgs {
  std::string measure, freqs, family = "linear:100", output, mu, nu;
  double tol = 1e-4;
  int nmax = 64;
};

struct ApArgs {
  std::string measure, norm = "k:1", trange, output, summary, family;
  double eps = 0.1, tstep = 0.05;
  int nmax = 16;
};

struct VerifyArgs {
  int cases = 500;
  std::uint64_t seed = 20240601;
};

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    io::writeText(path, text);
  }
}

int runGen(const GenArgs& a) {
  GeneratorSpec spec;
  if (!a.spec.empty()) {
    spec = io::generatorSpecFromJson(io::readJson(a.spec));
  } else {
    if (a.kind.empty() || a.window.empty()) {
      throw ValidationError("gen needs --kind and --window, or --spec");
    }
    spec = GeneratorSpec::parse(a.kind, a.params, io::parseWindow(a.window), a.seed);
  }
  const Measure m = spec.generate();
  emit(a.out, io::toJson(m).dump() + "\n");
  if (!a.saveSpec.empty()) io::writeText(a.saveSpec, io::toJson(spec).dump(2) + "\n");
  if (!a.out.empty() && a.out != "-") {
    std::cout << GeneratorSpec::kindName(spec.kind) << ": " << m.atoms().size() << " atoms, "
              << m.density().size() << " density segments -> " << a.out << "\n";
  }
  return kOk;
}

int runConvolve(const ConvolveArgs& a) {
  if (a.emit != "json" && a.emit != "csv") throw ValidationError("--emit must be json or csv");
  const Measure mu = io::readMeasure(a.mu);
  const Measure nu = io::readMeasure(a.nu);
  const auto family = VanHoveFamily::parse(a.family);
  const Window out = io::parseWindow(a.out);
  const auto probe = ProbeSeminorm::parse(a.probe, out);
  ConvergenceOptions conv;
  conv.tol = a.tol;
  conv.nMax = a.nmax;
  ConvolutionOptions opts;
  opts.densityStep = a.densityStep;
  const auto result = twistedEberlein(mu, nu, family, out, probe, conv, opts);

  Json report = io::toJson(result.report);
  report["family"] = family.toString();
  report["out"] = {out.lo, out.hi};
  const std::string body =
      a.emit == "json" ? io::toJson(result.gamma).dump() + "\n" : io::toCsv(result.gamma);
  if (a.output.empty() || a.output == "-") {
    if (a.emit == "json") {
      std::cout << Json{{"measure", io::toJson(result.gamma)}, {"report", report}}.dump() << "\n";
    } else {
      std::cout << body;
    }
    if (!a.report.empty()) io::writeText(a.report, report.dump(2) + "\n");
  } else {
    io::writeText(a.output, body);
    io::writeText(a.report.empty() ? a.output + ".report.json" : a.report, report.dump(2) + "\n");
    std::cout << "stages " << result.report.stages.size() << ", final n " << result.report.finalN
              << ", converged " << (result.report.converged ? "yes" : "no") << ", "
              << result.gamma.atoms().size() << " atoms -> " << a.output << "\n";
  }
  return result.report.converged ? kOk : kNotConverged;
}

std::string csvRow(double k, Complex v, double defect, bool converged) {
  return io::formatNumber(k) + "," + io::formatNumber(v.real()) + "," + io::formatNumber(v.imag()) +
         "," + io::formatNumber(defect) + "," + (converged ? "true" : "false") + "\n";
}

int runFbcoeff(const FbArgs& a) {
  const Measure m = io::readMeasure(a.measure);
  const auto freqs = io::parseFrequencySet(a.freqs);
  const auto family = VanHoveFamily::parse(a.family);
  std::string csv = "k,re,im,defect,converged\n";
  bool all = true;
  if (!a.mu.empty() || !a.nu.empty()) {
    if (a.mu.empty() || a.nu.empty()) throw ValidationError("--mu and --nu go together");
    const auto rows = cppCheck(io::readMeasure(a.mu), io::readMeasure(a.nu), m, freqs, family,
                               a.tol, a.nmax);
    for (const auto& r : rows) {
      csv += csvRow(r.k, r.gamma, r.defect, r.converged);
      all = all && r.converged;
    }
  } else {
    for (double k : freqs) {
      const auto r = fbLimit(m, k, family, a.tol, a.nmax);
      const double last = r.report.stages.back().distance.value_or(0.0);
      csv += csvRow(k, r.value, last, r.report.converged);
      all = all && r.report.converged;
    }
  }
  emit(a.output, csv);
  return all ? kOk : kNotConverged;
}

int runDiffract(const FbArgs& a) {
  const Measure gamma = io::readMeasure(a.measure);
  const auto candidates = io::parseFrequencySet(a.freqs);
  const auto family = VanHoveFamily::parse(a.family);
  const auto amps = diffractPointPart(gamma, candidates, family, a.tol, a.nmax);
  std::string csv = "k,re,im,defect,converged\n";
  bool all = true;
  for (const auto& p : amps) {
    const auto r = fbLimit(gamma, p.k, family, a.tol, a.nmax);
    csv += csvRow(p.k, p.amplitude, r.report.stages.back().distance.value_or(0.0), p.converged);
    all = all && p.converged;
  }
  emit(a.output, csv);
  return all ? kOk : kNotConverged;
}

int runApscan(const ApArgs& a) {
  const Measure m = io::readMeasure(a.measure);
  ScanParams params;
  params.nMax = a.nmax;
  if (!a.family.empty()) params.family = VanHoveFamily::parse(a.family);
  NormKind kind;
  const std::string& n = a.norm;
  try {
    if (n == "b1" || n == "b2") {
      kind = NormKind::besicovitch;
      params.p = n == "b1" ? 1.0 : 2.0;
    } else if (n.rfind("k:", 0) == 0) {
      kind = NormKind::kNorm;
      params.kLen = std::stod(n.substr(2));
    } else if (n.rfind("sup:", 0) == 0) {
      kind = NormKind::smoothedSup;
      params.tentWidth = std::stod(n.substr(4));
    } else {
      throw ValidationError("--norm must be b1, b2, k:LEN or sup:W");
    }
  } catch (const std::invalid_argument&) {
    throw ValidationError("--norm must be b1, b2, k:LEN or sup:W");
  }
  const auto scan = almostPeriodScan(m, a.eps, kind, params, io::parseWindow(a.trange), a.tstep);
  std::string csv = "t,value,isPeriod\n";
  for (std::size_t i = 0; i < scan.ts.size(); ++i) {
    csv += io::formatNumber(scan.ts[i]) + "," + io::formatNumber(scan.values[i]) + "," +
           (scan.values[i] < scan.epsilon ? "true" : "false") + "\n";
  }
  emit(a.output, csv);
  const Json summary{{"epsilon", scan.epsilon},
                     {"norm", toString(scan.normKind)},
                     {"scanRange", {scan.scanRange.lo, scan.scanRange.hi}},
                     {"tStep", scan.tStep},
                     {"periods", scan.periods},
                     {"maxGap", scan.maxGap}};
  if (!a.summary.empty()) io::writeText(a.summary, summary.dump(2) + "\n");
  if (!a.output.empty() && a.output != "-") {
    std::cout << scan.periods.size() << " eps-almost periods, maxGap " << scan.maxGap << "\n";
  }
  return kOk;
}

int runVerify(const VerifyArgs& a) {
  if (a.cases < 1) throw ValidationError("--cases must be positive");
  const auto results = verify::runSuite(a.cases, a.seed);
  bool ok = true;
  std::printf("%-66s %7s %7s %11s %9s\n", "law", "cases", "fails", "worst", "tol");
  for (const auto& r : results) {
    std::printf("%-66s %7d %7d %11.3g %9.3g  %s\n", r.name.c_str(), r.cases, r.failures, r.worst,
                r.tolerance, r.passed() ? "ok" : "FAILED");
    if (!r.passed()) std::printf("    counterexample: %s\n", r.counterexample.c_str());
    ok = ok && r.passed();
  }
  return ok ? kOk : kInvariantFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-volume twisted Eberlein convolution, Fourier-Bohr coefficients and "
               "almost-periodicity diagnostics"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "Generate a measure as JSON");
  g->add_option("--kind", gen.kind,
                "lattice|incommensurate|incommensurateLimit|bernoulli|fibonacci|shrinkingBump|"
                "trigDensity");
  g->add_option("--params", gen.params, "Colon separated parameters of the kind");
  g->add_option("--window", gen.window, "LO:HI");
  g->add_option("--out", gen.out, "Output file (default stdout)");
  g->add_option("--seed", gen.seed, "Seed for random kinds");
  g->add_option("--spec", gen.spec, "Generator spec JSON instead of --kind/--params/--window");
  g->add_option("--save-spec", gen.saveSpec, "Write the generator spec JSON here");

  ConvolveArgs conv;
  auto* c = app.add_subcommand("convolve", "Twisted Eberlein convolution with convergence control");
  c->add_option("--mu", conv.mu, "First measure JSON")->required();
  c->add_option("--nu", conv.nu, "Second measure JSON")->required();
  c->add_option("--family", conv.family, "linear:L0 | geo:L0:RATIO [:uncentered]");
  c->add_option("--out", conv.out, "Output window LO:HI")->required();
  c->add_option("--tol", conv.tol, "Tolerance relative to the largest stage-1 probe value");
  c->add_option("--nmax", conv.nmax, "Largest stage");
  c->add_option("--probe", conv.probe, "Tent width and center step W:STEP");
  c->add_option("--emit", conv.emit, "json|csv");
  c->add_option("--output", conv.output, "Measure file (report goes to FILE.report.json)");
  c->add_option("--report", conv.report, "Report file");
  c->add_option("--density-step", conv.densityStep, "Output density step (0: automatic)");

  FbArgs fb;
  auto* f = app.add_subcommand("fbcoeff", "Fourier-Bohr coefficients along a van Hove family");
  f->add_option("--measure", fb.measure, "Measure JSON")->required();
  f->add_option("--freqs", fb.freqs, "Frequency set, e.g. int:-5..5")->required();
  f->add_option("--family", fb.family, "linear:L0 | geo:L0:RATIO [:uncentered]");
  f->add_option("--tol", fb.tol, "Stop when consecutive stages differ by less");
  f->add_option("--nmax", fb.nmax, "Largest stage");
  f->add_option("--mu", fb.mu, "With --nu: report |a(measure) - a(mu) conj a(nu)| as defect");
  f->add_option("--nu", fb.nu, "See --mu");
  f->add_option("--output", fb.output, "CSV file (default stdout)");

  FbArgs df;
  auto* d = app.add_subcommand("diffract", "Pure-point amplitudes of an autocorrelation");
  d->add_option("--gamma", df.measure, "Autocorrelation JSON")->required();
  d->add_option("--candidates", df.freqs, "Frequency set")->required();
  d->add_option("--family", df.family, "linear:L0 | geo:L0:RATIO [:uncentered]");
  d->add_option("--tol", df.tol, "Convergence tolerance and amplitude cutoff");
  d->add_option("--nmax", df.nmax, "Largest stage");
  d->add_option("--output", df.output, "CSV file (default stdout)");

  ApArgs ap;
  auto* s = app.add_subcommand("apscan", "Scan for eps-almost periods");
  s->add_option("--measure", ap.measure, "Measure JSON")->required();
  s->add_option("--eps", ap.eps, "Threshold");
  s->add_option("--norm", ap.norm, "b1 | b2 | k:LEN | sup:W");
  s->add_option("--trange", ap.trange, "Translation range LO:HI")->required();
  s->add_option("--tstep", ap.tstep, "Translation step");
  s->add_option("--family", ap.family, "Averaging family for b1/b2");
  s->add_option("--nmax", ap.nmax, "Stages for b1/b2");
  s->add_option("--output", ap.output, "CSV file (default stdout)");
  s->add_option("--summary", ap.summary, "Summary JSON file");

  VerifyArgs ver;
  auto* v = app.add_subcommand("verify", "Run the randomized invariant suite");
  v->add_option("--cases", ver.cases, "Random instances per law");
  v->add_option("--seed", ver.seed, "Seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInvalid;
  }

  try {
    if (*g) return runGen(gen);
    if (*c) return runConvolve(conv);
    if (*f) return runFbcoeff(fb);
    if (*d) return runDiffract(df);
    if (*s) return runApscan(ap);
    if (*v) return runVerify(ver);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const SupportError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  }
  return kInvalid;
}
