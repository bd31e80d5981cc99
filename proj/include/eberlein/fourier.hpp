#pragma once

#include <span>
#include <vector>

#include "eberlein/eberlein.hpp"
#include "eberlein/measure.hpp"
#include "eberlein/vanhove.hpp"

namespace eberlein {

/// P(x) = sum_k c_k exp(2 pi i f_k x) with pairwise distinct frequencies.
struct TrigPolynomial {
  struct Term {
    double frequency = 0.0;
    Complex coefficient;
  };
  std::vector<Term> terms;

  /// Throws ValidationError on non-finite data or frequencies closer than 1e-12.
  static TrigPolynomial make(std::vector<Term> terms);
  Complex operator()(double x) const;
};

/// (1/|A|) * integral over A of exp(-2 pi i k s) dmu(s). Cell integrals are
/// taken in closed form.
Complex fbCoefficient(const Measure& mu, double k, const Window& A);

struct FourierBohrLimit {
  Complex value;
  ConvergenceReport report;
};

/// Coefficients along A_1, A_2, ... until two consecutive values differ by
/// less than tol. Stages are built incrementally from the nested annuli and
/// stop at the largest stage the measure is known on. Non-convergence is
/// reported, not thrown.
FourierBohrLimit fbLimit(const Measure& mu, double k, const VanHoveFamily& family, double tol,
                         int nMax = 64);

/// max over t of |(1/|A|) int_A conj(chi(s - t)) dmu(s) - chi(t) a_k(mu)|.
/// The left side evaluates the shifted character directly.
double characterLemmaResidual(const Measure& mu, double k, const Window& A,
                              std::span<const double> tGrid);

struct CppEntry {
  double k = 0.0;
  double defect = 0.0;
  Complex gamma;  // a_k(gamma)
  Complex mu;     // a_k(mu)
  Complex nu;     // a_k(nu)
  bool converged = false;
};

/// |a_k(gamma) - a_k(mu) conj(a_k(nu))| for every k. Each coefficient runs
/// its own limit over the stages of `family` its measure is known on.
std::vector<CppEntry> cppCheck(const Measure& mu, const Measure& nu, const Measure& gamma,
                               std::span<const double> freqs, const VanHoveFamily& family,
                               double tol, int nMax = 64);

struct PointAmplitude {
  double k = 0.0;
  Complex amplitude;
  bool converged = false;
};

/// Fourier-Bohr coefficients of gamma at the candidates, dropping those with
/// modulus below tol.
std::vector<PointAmplitude> diffractPointPart(const Measure& gamma,
                                              std::span<const double> candidates,
                                              const VanHoveFamily& family, double tol,
                                              int nMax = 64);

}  // namespace eberlein
