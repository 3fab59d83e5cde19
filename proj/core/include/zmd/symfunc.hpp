#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <vector>

#include "zmd/graph.hpp"
#include "zmd/partition.hpp"
#include "zmd/rational.hpp"
#include "zmd/thoma.hpp"

namespace zmd {

enum class BasisKind { Monomial, PowerSum, Schur, JackP, JackPaper };

/// Basis tag; vartheta is meaningful only for the two Jack bases.
struct Basis {
  BasisKind kind = BasisKind::Monomial;
  Rational vartheta{1};

  static Basis monomial() { return {BasisKind::Monomial, Rational(1)}; }
  static Basis power_sum() { return {BasisKind::PowerSum, Rational(1)}; }
  static Basis schur() { return {BasisKind::Schur, Rational(1)}; }
  static Basis jack_p(const Rational& vartheta) { return {BasisKind::JackP, vartheta}; }
  static Basis jack_paper(const Rational& vartheta) { return {BasisKind::JackPaper, vartheta}; }

  std::string name() const;
  /// Symbol used when printing expansions: m, p, s, P, J.
  std::string symbol() const;

  friend bool operator==(const Basis& a, const Basis& b);
};

using CoeffMap = std::map<Partition, Rational>;

/// Sparse symmetric function of bounded degree in one basis, exact coefficients.
/// Keys may have any size up to `degree`; zero coefficients are never stored.
class GradedSymPoly {
 public:
  GradedSymPoly(int degree, Basis basis) : degree_(degree), basis_(std::move(basis)) {}
  GradedSymPoly(int degree, Basis basis, const CoeffMap& coeffs);

  static GradedSymPoly element(const Partition& lambda, Basis basis);

  int degree() const { return degree_; }
  const Basis& basis() const { return basis_; }
  const CoeffMap& coeffs() const { return coeffs_; }
  Rational coeff(const Partition& key) const;
  bool is_zero() const { return coeffs_.empty(); }

  void add(const Partition& key, const Rational& value);
  GradedSymPoly& operator+=(const GradedSymPoly& other);
  GradedSymPoly& operator-=(const GradedSymPoly& other);
  GradedSymPoly& operator*=(const Rational& scalar);

  /// Coefficients grouped by the size of the key partition.
  std::map<int, CoeffMap> homogeneous_components() const;

  friend bool operator==(const GradedSymPoly& a, const GradedSymPoly& b) {
    return a.basis_ == b.basis_ && a.coeffs_ == b.coeffs_;
  }

 private:
  int degree_;
  Basis basis_;
  CoeffMap coeffs_;
};

struct SymConfig {
  int max_degree = 12;       // monomial / power-sum / Schur work
  int max_jack_degree = 8;   // Jack eigen-solves
};

/// Outcome of pinning the scalar that turns P-normalized Jack polynomials into
/// functions whose p_1-Pieri coefficients are the Jack-graph edge weights.
struct PieriReport {
  Rational vartheta;
  int max_level = 0;
  std::size_t parent_checks = 0;
  CoeffMap scalars;                       // J_nu = scalar * P_nu
  std::vector<std::string> inconsistencies;  // verbatim, never silently fixed
  bool consistent() const { return inconsistencies.empty(); }
};

/// Kingman Pieri rule generalized: p_k * f for f in the monomial basis.
CoeffMap multiply_power_sum(int k, const CoeffMap& f_in_monomials);

/// Number of semistandard tableaux of shape lambda and content mu.
Rational kostka(const Partition& lambda, const Partition& mu);

/// Laplace-Beltrami operator 1/2 sum x_i^2 d_i^2 + vartheta sum_{i != j} x_i^2/(x_i - x_j) d_i
/// applied to m_lambda in n variables, returned in the monomial basis.
CoeffMap laplace_beltrami_on_monomial(const Partition& lambda, int n, const Rational& vartheta);

/// Eigenvalue of that operator on the Jack polynomial indexed by lambda in n variables:
/// n(lambda') + vartheta ((n-1)|lambda| - n(lambda)).
Rational laplace_beltrami_eigenvalue(const Partition& lambda, int n, const Rational& vartheta);

/// Schur polynomial at a finite point by the bialternant formula, with an exact
/// monomial-expansion fallback when two coordinates are within 1e-9.
double schur_eval(const Partition& eta, std::span<const double> x);

/// Monomial symmetric polynomial m_mu evaluated at a finite point.
double monomial_eval(const Partition& mu, std::span<const double> x);

/// Bases, conversions, Jack construction and the Thoma specialization.
/// All caches are internally synchronized; one instance may be shared.
class SymmetricAlgebra {
 public:
  explicit SymmetricAlgebra(SymConfig config = {});
  ~SymmetricAlgebra();
  SymmetricAlgebra(const SymmetricAlgebra&) = delete;
  SymmetricAlgebra& operator=(const SymmetricAlgebra&) = delete;

  /// Process-wide instance with the default caps.
  static SymmetricAlgebra& shared();

  const SymConfig& config() const { return config_; }

  GradedSymPoly convert(const GradedSymPoly& f, const Basis& target) const;

  /// Expansion of the basis element b_lambda in monomials.
  CoeffMap monomial_expansion(const Partition& lambda, const Basis& basis) const;

  /// P-normalized Jack polynomial (coefficient of m_eta is 1), exact.
  GradedSymPoly jack_in_monomials(const Partition& eta, const Rational& vartheta) const;

  /// Jack function rescaled so that p_1 J_eta = sum chi(eta,nu) J_nu; in monomials.
  GradedSymPoly jack_paper(const Partition& eta, const Rational& vartheta) const;

  /// Builds (or returns) the Pieri pinning up to `max_level`.
  PieriReport pieri_report(const Rational& vartheta, int max_level) const;

  /// Phi_omega(f): p_1 -> 1, p_k -> sum alpha^k + (-vartheta)^(k-1) sum beta^k.
  double specialize(const GradedSymPoly& f, const ThomaPoint& omega, const Rational& vartheta) const;
  Rational specialize_exact(const GradedSymPoly& f, const ThomaPoint& omega, const Rational& vartheta) const;

  /// j_eta = dim(eta) * Phi_omega(J_eta).
  double j_eval(const Partition& eta, const ThomaPoint& omega, const Rational& vartheta) const;
  Rational j_eval_exact(const Partition& eta, const ThomaPoint& omega, const Rational& vartheta) const;

  /// dim(eta) J_eta in the power-sum basis (cached).
  CoeffMap j_in_power_sums(const Partition& eta, const Rational& vartheta) const;

  /// Shared Jack graph for vartheta (dimension recursion).
  std::shared_ptr<const BranchingGraph> jack_graph(const Rational& vartheta) const;

 private:
  struct JackLevel;
  struct PieriState;

  void check_degree(int d, int cap, const char* what) const;
  CoeffMap from_monomials(const CoeffMap& f, const Basis& target) const;
  const CoeffMap& power_sum_row(const Partition& lambda) const;
  const CoeffMap& schur_row(const Partition& lambda) const;
  const CoeffMap& jack_row(const Partition& lambda, const Rational& vartheta) const;
  PieriState& pieri_state(const Rational& vartheta, int max_level) const;

  SymConfig config_;
  mutable std::recursive_mutex mu_;
  mutable std::map<Partition, CoeffMap> power_rows_;
  mutable std::map<Partition, CoeffMap> schur_rows_;
  mutable std::map<std::pair<Rational, int>, std::map<Partition, CoeffMap>> jack_levels_;
  mutable std::map<Rational, std::unique_ptr<PieriState>> pieri_;
  mutable std::map<std::pair<Rational, Partition>, CoeffMap> j_power_cache_;
  mutable std::map<Rational, std::shared_ptr<const BranchingGraph>> graphs_;
};

/// Evaluates j_eta(omega; vartheta) for every eta of one level at once.
class JLevelEvaluator {
 public:
  JLevelEvaluator(const SymmetricAlgebra& algebra, int n, const Rational& vartheta);

  int level() const { return n_; }
  const std::vector<Partition>& partitions() const { return partitions_; }
  std::vector<double> evaluate(const ThomaPoint& omega) const;
  std::vector<Rational> evaluate_exact(const ThomaPoint& omega) const;

 private:
  int n_;
  Rational vartheta_;
  std::vector<Partition> partitions_;
  std::vector<std::vector<std::pair<Partition, Rational>>> exact_terms_;
  std::vector<std::vector<std::pair<std::vector<int>, double>>> terms_;
};

}  // namespace zmd
