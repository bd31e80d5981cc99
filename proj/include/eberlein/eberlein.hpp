#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "eberlein/convolution.hpp"
#include "eberlein/measure.hpp"
#include "eberlein/probe.hpp"
#include "eberlein/vanhove.hpp"

namespace eberlein {

struct ConvergenceStage {
  int n = 0;
  double length = 0.0;
  /// Distance to the previous stage; empty for the first stage.
  std::optional<double> distance;
};

struct ConvergenceReport {
  std::vector<ConvergenceStage> stages;
  bool converged = false;
  int finalN = 0;
  /// Absolute threshold the distances were compared against.
  double threshold = 0.0;
  std::string metric;
};

struct ConvergenceOptions {
  double tol = 1e-3;
  /// Scale tol by the largest smoothed value of the first stage.
  bool relative = true;
  int nMax = 64;
};

/// Which factors of the finite-volume convolution are restricted to A.
/// The unrestricted factor runs over the whole region where it is known.
enum class LimitForm {
  both,        // (mu|A) * ~(nu|A)
  leftOnly,    // mu unrestricted:  mu * ~(nu|A)
  rightOnly,   // nu unrestricted:  (mu|A) * ~nu
};

/// (1/|A|) (mu|A) * ~(nu|A), restricted to `out`.
Measure finiteTwisted(const Measure& mu, const Measure& nu, const Window& A, const Window& out,
                      const ConvolutionOptions& options = {});

/// (1/|A|) (mu|A) * (nu|-A), computed as the twisted form with ~nu.
Measure finiteEberlein(const Measure& mu, const Measure& nu, const Window& A, const Window& out,
                       const ConvolutionOptions& options = {});

Measure finiteTwistedAlt(const Measure& mu, const Measure& nu, const Window& A,
                         const Window& out, LimitForm form, const ConvolutionOptions& options = {});

/// Probe seminorm of (1/|A|) (mu - mu|A) * ~(nu|A): the part of the one-sided
/// form that the two-sided form drops. Vanishes like |A|^-1 along van Hove
/// sequences.
/// The convolution is evaluated on probe.reach().
double boundaryDefect(const Measure& mu, const Measure& nu, const Window& A,
                      const ProbeSeminorm& probe, const ConvolutionOptions& options = {});

struct EberleinLimit {
  Measure gamma;
  ConvergenceReport report;
};

/// Runs finiteTwisted over A_1, A_2, ... and stops once the probe distance
/// between consecutive stages drops below the threshold. Stages are computed
/// in batches of kernelThreads() and consumed in order.
EberleinLimit twistedEberlein(const Measure& mu, const Measure& nu, const VanHoveFamily& family,
                              const Window& out, const ProbeSeminorm& probe,
                              const ConvergenceOptions& conv = {},
                              const ConvolutionOptions& options = {});

/// The four autocorrelations (mu+nu, mu-nu, mu+i nu, mu-i nu) at A.
std::array<Measure, 4> polarisationParts(const Measure& mu, const Measure& nu, const Window& A,
                                         const Window& out, const ConvolutionOptions& options = {});

/// (1/4) [pp - mm + i pi - i mi].
Measure polarisationCombine(const Measure& pp, const Measure& mm, const Measure& pi,
                            const Measure& mi);

}  // namespace eberlein
