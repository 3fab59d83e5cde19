#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "zmd/coalescent.hpp"
#include "zmd/graph.hpp"
#include "zmd/partition.hpp"
#include "zmd/rational.hpp"
#include "zmd/rng.hpp"
#include "zmd/symfunc.hpp"
#include "zmd/thoma.hpp"
#include "zmd/zmeasure.hpp"

namespace zmd {

/// Polynomial in phi_2, phi_3, ... (phi_1 is the constant 1). A monomial is the
/// partition of its indices, all parts >= 2; weighted degree is the partition size.
class PhiPoly {
 public:
  PhiPoly() = default;
  static PhiPoly constant(const Rational& c);
  /// phi_k; k = 1 gives the constant 1, k = 0 is rejected.
  static PhiPoly phi(int k);
  /// Product of phi_{parts}; parts equal to 1 drop out.
  static PhiPoly monomial(const std::vector<int>& indices, const Rational& c = Rational(1));

  const std::map<Partition, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const;
  Rational coeff(const Partition& key) const;

  void add(const Partition& key, const Rational& c);
  PhiPoly& operator+=(const PhiPoly& o);
  PhiPoly& operator-=(const PhiPoly& o);
  PhiPoly& operator*=(const Rational& c);
  friend PhiPoly operator+(PhiPoly a, const PhiPoly& b) { return a += b; }
  friend PhiPoly operator-(PhiPoly a, const PhiPoly& b) { return a -= b; }
  friend PhiPoly operator*(PhiPoly a, const Rational& c) { return a *= c; }
  friend PhiPoly operator*(const PhiPoly& a, const PhiPoly& b);
  friend bool operator==(const PhiPoly& a, const PhiPoly& b) { return a.terms_ == b.terms_; }

  /// d/d phi_k.
  PhiPoly derivative(int k) const;

  /// Value at a point: phi_k -> omega.power_sum(k, vartheta).
  double evaluate(const ThomaPoint& omega, double vartheta) const;
  Rational evaluate_exact(const ThomaPoint& omega, const Rational& vartheta) const;

  std::string to_string() const;

 private:
  std::map<Partition, Rational> terms_;
};

/// Numeric parameters the operator depends on.
struct GeneratorParams {
  Rational vartheta{1};
  Rational zsum{0};  // z + z'
  Rational theta{1};
  static GeneratorParams from(const ZParams& p) { return {p.vartheta, p.zsum(), p.theta}; }
};

PhiPoly generator_A_apply(const PhiPoly& f, const GeneratorParams& params);

/// sum_{i,j>=2} ij (phi_{i+j-1} - phi_i phi_j) df/dphi_i dg/dphi_j.
PhiPoly carre_du_champ(const PhiPoly& f, const PhiPoly& g);

/// Image of a power-sum expansion under p_1 -> 1, p_k -> phi_k.
PhiPoly phi_image(const CoeffMap& power_sum_coeffs);

struct SpectrumReport {
  int max_degree = 0;
  double theta = 0.0;
  std::size_t dimension = 0;
  std::vector<double> eigen_real;
  std::vector<double> eigen_imag;
  std::vector<double> expected;       // sorted descending
  std::map<int, int> expected_multiplicity;  // m -> p(m) - p(m-1) (m = 0 -> 1)
  std::map<int, int> found_multiplicity;
  double max_deviation = 0.0;
  bool ok = false;
  std::vector<std::string> problems;
};

/// Eigen-solve of A on all phi-monomials of weight <= max_degree (max_degree <= 7).
SpectrumReport spectrum_check(int max_degree, const GeneratorParams& params, double tol = 1e-8);

struct DualityResidual {
  Partition eta;
  PhiPoly lhs;
  PhiPoly rhs;
  PhiPoly residual;
  bool zero() const { return residual.is_zero(); }
};

/// A s_eta - [ -lambda_n s_eta + 1/2 sum_zeta (z)_eta(z')_eta/((z)_zeta(z')_zeta) s_zeta ], exact.
DualityResidual duality_residual(const Partition& eta, const ZParams& params, const SymmetricAlgebra& algebra = SymmetricAlgebra::shared());

/// How level one is treated: Literal keeps d_m1 as displayed (rows lose d_m0),
/// Absorbing lumps d_m0 into level one, which is where the jump process stops.
enum class LevelOneConvention { Literal, Absorbing };

/// d_mn(t) H(eta, nu) at vartheta = 1, with m = |nu|, n = |eta|.
double dual_transition_prob(const Partition& nu, const Partition& eta, double t, double theta,
                            LevelOneConvention convention = LevelOneConvention::Literal);

/// Full law of D_t started at nu over all eta inside nu with |eta| >= 1.
std::map<Partition, double> dual_law(const Partition& nu, double t, double theta,
                                     LevelOneConvention convention = LevelOneConvention::Absorbing);

struct DualState {
  Partition current;
  double time = 0.0;
  bool absorbed = false;
  int jumps = 0;
};

/// Jump process on the Young graph: rate lambda_n at level n, down-chain jumps,
/// absorbed at (1).
class DualSimulator {
 public:
  explicit DualSimulator(double theta);

  double theta() const { return theta_; }
  DualState run(const Partition& start, double t, CounterRng& rng) const;
  /// Law at time t over `paths` paths; path i uses stream i of `seed`.
  std::map<Partition, double> empirical_law(const Partition& start, double t, std::uint64_t paths, std::uint64_t seed) const;

 private:
  const std::vector<std::pair<Partition, double>>& down_cdf(const Partition& zeta) const;

  double theta_;
  BranchingGraph young_;
  mutable std::mutex mu_;
  mutable std::map<Partition, std::vector<std::pair<Partition, double>>> cdf_;
};

/// Right side of the expectation identity for j_eta(Y_t) given Y_0 = omega, vartheta = 1.
double expected_j_given_start(const Partition& eta, const ThomaPoint& omega, double t, const ZMeasure& measure,
                              LevelOneConvention convention = LevelOneConvention::Absorbing,
                              const SymmetricAlgebra& algebra = SymmetricAlgebra::shared());

}  // namespace zmd
