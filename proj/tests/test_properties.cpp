#include <doctest.h>

#include <Eigen/Dense>
#include <random>

#include "eberlein/apdiag.hpp"
#include "eberlein/eberlein.hpp"
#include "eberlein/generators.hpp"
#include "eberlein/probe.hpp"
#include "helpers.hpp"
#include "verify.hpp"

using namespace eberlein;

namespace {

constexpr int kCases = 500;
constexpr std::uint64_t kSeed = 0x5eed2024;

std::vector<double> randomPoints(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> p(static_cast<std::size_t>(n));
  for (auto& x : p) x = u(rng);
  return p;
}

}  // namespace

TEST_CASE("algebraic laws on random instances") {
  for (const auto& law : verify::algebraicLaws()) {
    const auto r = verify::runLaw(law, kCases, kSeed);
    CAPTURE(law.name);
    CHECK(r.cases == kCases);
    CHECK_MESSAGE(r.passed(), law.name << ": " << r.failures << " failures, worst " << r.worst
                                       << "; shrunk: " << r.counterexample);
  }
}

double lowestEigenvalue(const std::vector<Complex>& g, Eigen::Index n, double& scale) {
  Eigen::MatrixXcd G(n, n);
  scale = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      G(i, j) = g[static_cast<std::size_t>(i * n + j)];
      scale = std::max(scale, std::abs(G(i, j)));
    }
  }
  CHECK((G - G.adjoint()).cwiseAbs().maxCoeff() <= 1e-12 * std::max(scale, 1.0));
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(G).eigenvalues().minCoeff();
}

TEST_CASE("smoothed Gram matrices of atomic autocorrelations are positive semidefinite") {
  std::mt19937_64 rng(kSeed);
  for (int c = 0; c < kCases; ++c) {
    const auto in = verify::randomInstance(rng, false);
    const Measure gamma = finiteTwisted(in.mu, in.mu, in.A, {-3.0, 3.0});
    const auto points = randomPoints(rng, 2 + c % 7);
    double scale = 0.0;
    const double lowest = lowestEigenvalue(smoothedGram(gamma, points, 0.25),
                                           static_cast<Eigen::Index>(points.size()), scale);
    CHECK(lowest >= -1e-8 * std::max(scale, 1.0));
  }
}

TEST_CASE("Gram matrices with densities are PSD up to the cell discretisation") {
  // cell averages of the piecewise-linear density x density term are not
  // positive definite themselves; the deficit is bounded by n times the
  // largest jump between neighbouring output cells
  std::mt19937_64 rng(kSeed);
  for (int c = 0; c < kCases; ++c) {
    const auto in = verify::randomInstance(rng, true);
    const Measure gamma = finiteTwisted(in.mu, in.mu, in.A, {-3.0, 3.0});
    const auto points = randomPoints(rng, 2 + c % 7);
    double jump = 0.0;
    for (const auto& d : gamma.density()) {
      for (std::size_t i = 0; i + 1 < d.size(); ++i) {
        jump = std::max(jump, std::abs(d.samples[i + 1] - d.samples[i]));
      }
      if (d.size() > 0) jump = std::max({jump, std::abs(d.samples.front()), std::abs(d.samples.back())});
    }
    double scale = 0.0;
    const auto n = static_cast<Eigen::Index>(points.size());
    const double lowest = lowestEigenvalue(smoothedGram(gamma, points, 0.25), n, scale);
    CHECK(lowest >= -static_cast<double>(n) * jump - 1e-8 * std::max(scale, 1.0));
  }
}

TEST_CASE("Cauchy-Schwarz for smoothed finite-volume convolutions") {
  // (gamma_{mu,nu} * tent * ~tent)(t) is an L2 inner product of the smoothed
  // restrictions, so it is bounded by the diagonal terms at 0
  std::mt19937_64 rng(kSeed + 1);
  const double w = 0.25;
  for (int c = 0; c < kCases; ++c) {
    const auto in = verify::randomInstance(rng, c % 2 == 1);
    const Window out{-3.0, 3.0};
    const double zero[] = {0.0};
    const double mm = smoothedGram(finiteTwisted(in.mu, in.mu, in.A, out), zero, w)[0].real();
    const double nn = smoothedGram(finiteTwisted(in.nu, in.nu, in.A, out), zero, w)[0].real();
    const Measure mn = finiteTwisted(in.mu, in.nu, in.A, out);
    for (double t : randomPoints(rng, 4)) {
      const double pts[] = {t, 0.0};
      const Complex v = smoothedGram(mn, pts, w)[1];
      CHECK(std::abs(v) <= std::sqrt(std::max(mm, 0.0) * std::max(nn, 0.0)) + 1e-12);
    }
  }
}

TEST_CASE("probe values are bounded by the mean mass of mu times the K-norm of nu") {
  std::mt19937_64 rng(kSeed + 2);
  for (int c = 0; c < kCases; ++c) {
    const auto in = verify::randomInstance(rng, c % 2 == 1);
    const Measure gamma = finiteTwisted(in.mu, in.nu, in.A, in.out);
    const double w = 0.5;
    const auto probe = ProbeSeminorm::grid(in.out, w, 0.05);
    // |mu|(A)/|A| times sup |nu * tent| <= |nu|([x - w, x + w)) / w
    const Measure muA = restrict(in.mu, in.A);
    double massMu = 0.0;
    for (const auto& a : muA.atoms()) massMu += std::abs(a.weight);
    for (const auto& d : muA.density()) {
      for (const auto& v : d.samples) massMu += std::abs(v) * d.step;
    }
    const Measure nuA = restrict(in.nu, in.A);
    const double kNorm = nuA.empty() ? 0.0
                                     : slidingTotalVariationSup(nuA, 2.0 * w, in.A.expanded(2.0 * w));
    CHECK(probeNorm(gamma, probe) <= massMu / in.A.length() * kNorm / w * (1.0 + 1e-12) + 1e-15);
  }
}

TEST_CASE("joint translation defect decays like 1/|A|") {
  const auto [fa, fb] = fibonacciPoints({-1000.0, 1000.0});
  const Measure mu = addScaled(fa, fb, 1.0, 0.5);
  const Measure nu = bernoulliComb(0.5, 1.0, -1.0, 42, {-1000.0, 1000.0});
  const Window out{-4.0, 4.0};
  const double w = 0.25;
  const auto probe = ProbeSeminorm::grid(out, w, 0.05);
  for (double t : {0.3, 1.7, 5.0}) {
    const Measure mut = translate(mu, t);
    const Measure nut = translate(nu, t);
    double previous = INFINITY;
    for (double L : {100.0, 200.0, 400.0, 800.0}) {
      const Window A{-L, L};
      const double d = probeDistance(finiteTwisted(mut, nut, A, out), finiteTwisted(mu, nu, A, out),
                                     probe);
      // at most four edge bands of width |t| + 1 lose or gain pairs, each
      // pairing with at most (2w + 1) kBound of the other factor
      const double bound = 4.0 * (t + 1.0) * mu.kBound() * (2.0 * w + 1.0) * nu.kBound() / w /
                           A.length();
      CHECK(d <= bound);
      previous = std::min(previous, d);
    }
  }
}
