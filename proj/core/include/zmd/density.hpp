#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "zmd/coalescent.hpp"
#include "zmd/partition.hpp"
#include "zmd/symfunc.hpp"
#include "zmd/thoma.hpp"
#include "zmd/zmeasure.hpp"

namespace zmd {

struct DensityEval {
  double t = 0.0;
  ThomaPoint sigma;
  ThomaPoint omega;
  int truncation = 0;
  double value_mixture = 0.0;
  double value_spectral = 0.0;
  double tail_spectral = 0.0;  // bound on |q_mixture(N) - q_spectral(N)| from the terms m > N
  double tail_mixture = 0.0;   // sum_{n>N} d_n times the largest computed kernel
  double rounding = 0.0;       // floating-point allowance for both partial sums
  double tail_estimate = 0.0;  // tail_spectral + tail_mixture + rounding
  bool unstable = false;
  std::vector<double> kernels;  // K_0..K_N
  std::vector<double> g;        // G_0..G_N (G_0 = 1, G_1 = 0)
  double growth_c = 0.0;        // fit log|G_m| ~ log c + d m log m over 2 <= m <= N
  double growth_d = 0.0;
};

/// Kernels, both series forms of the transition density, and their tails.
class DensityModel {
 public:
  explicit DensityModel(const ZMeasure& measure, const SymmetricAlgebra& algebra = SymmetricAlgebra::shared());

  const ZMeasure& measure() const { return measure_; }

  double kernel_K(int n, const ThomaPoint& sigma, const ThomaPoint& omega) const;
  std::vector<double> kernels(int max_n, const ThomaPoint& sigma, const ThomaPoint& omega) const;

  /// (-1)^{m-n} C(m,n) (theta+2m-1)(theta+n)_{m-1} / m!.
  static double g_coefficient(int m, int n, double theta);

  double g_m(int m, const ThomaPoint& sigma, const ThomaPoint& omega) const;
  double q_spectral(double t, const ThomaPoint& sigma, const ThomaPoint& omega, int truncation) const;
  double q_mixture(double t, const ThomaPoint& sigma, const ThomaPoint& omega, int truncation) const;

  DensityEval evaluate(double t, const ThomaPoint& sigma, const ThomaPoint& omega, int truncation) const;

 private:
  const JLevelEvaluator& evaluator(int n) const;

  const ZMeasure& measure_;
  const SymmetricAlgebra& algebra_;
  mutable std::mutex mu_;
  mutable std::map<int, std::unique_ptr<JLevelEvaluator>> evaluators_;
};

struct ErgodicBound {
  double t = 0.0;
  double theta = 0.0;
  double bound = 0.0;  // (theta+1)(theta+2)/2 exp(-(theta+1) t)
  double proxy = 0.0;  // sum_{n >= 2} d_n(t)
};

ErgodicBound ergodic_bound(double t, double theta);

struct ProbeResult {
  Partition zeta;
  int m = 0;
  double approx = 0.0;  // sum_{|eta|=m} M_m(eta) j_zeta(eta~/m; 1)
  double target = 0.0;  // M_{|zeta|}(zeta)
  double gap = 0.0;
};

/// Reproducible finite-support points with rational coordinates: up to three
/// alpha and two beta entries plus a gamma share, weights drawn from 1..20.
std::vector<ThomaPoint> seeded_thoma_points(std::size_t count, std::uint64_t seed);

ProbeResult weak_convergence_probe(const Partition& zeta, int m, const ZMeasure& measure,
                                   const SymmetricAlgebra& algebra = SymmetricAlgebra::shared());

}  // namespace zmd
