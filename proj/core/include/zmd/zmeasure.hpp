#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "zmd/graph.hpp"
#include "zmd/partition.hpp"
#include "zmd/rational.hpp"
#include "zmd/rng.hpp"

namespace zmd {

enum class ParamCase { Principal, Complementary };

/// (z, z', vartheta) with theta = z z' / vartheta, validated on construction.
struct ZParams {
  GaussianRational z;
  GaussianRational zprime;
  Rational vartheta{1};
  Rational theta{1};
  ParamCase kind = ParamCase::Principal;

  /// ParameterError unless the triple falls in the principal or complementary case
  /// and theta > 0.
  static ZParams make(const GaussianRational& z, const GaussianRational& zprime, const Rational& vartheta);

  /// z + z', always real in either case.
  Rational zsum() const { return (z + zprime).re; }
  double theta_d() const { return to_double(theta); }
  std::string case_name() const { return kind == ParamCase::Principal ? "principal" : "complementary"; }
};

/// (z)_{eta;vartheta} = prod over boxes (i,j) of (z + (j-1) - (i-1) vartheta).
GaussianRational z_pochhammer(const GaussianRational& z, const Partition& eta, const Rational& vartheta);
std::complex<double> z_pochhammer(std::complex<double> z, const Partition& eta, double vartheta);

struct LevelTable {
  int n = 0;
  std::vector<Partition> partitions;  // reverse-lex
  std::vector<Rational> raw;          // the closed-form mass with recursion dimensions
  Rational total{0};                  // sum of raw over the level
  std::vector<Rational> normalized;   // raw / total
  std::vector<double> raw_d;
  std::vector<double> normalized_d;

  std::size_t index(const Partition& eta) const;
};

/// The Z-partition structure on the Jack graph. Level tables are exact, built
/// once under a lock, then shared read-only.
class ZMeasure {
 public:
  explicit ZMeasure(ZParams params);

  const ZParams& params() const { return params_; }
  const BranchingGraph& graph() const { return *graph_; }

  std::shared_ptr<const LevelTable> level(int n) const;

  Rational raw_mass(const Partition& eta) const;
  double mass(const Partition& eta) const;  // raw, as double

  /// p_up(eta, zeta) = chi(eta,zeta) M_{n+1}(zeta) dim(eta) / (M_n(eta) dim(zeta)).
  std::map<Partition, Rational> up_prob(const Partition& eta) const;

 private:
  ZParams params_;
  std::shared_ptr<BranchingGraph> graph_;
  mutable std::mutex mu_;
  mutable std::map<int, std::shared_ptr<const LevelTable>> levels_;
};

struct EmpiricalLaw {
  std::vector<Partition> states;
  std::vector<std::uint64_t> counts;
  std::uint64_t total = 0;
  std::map<Partition, double> frequencies() const;
};

/// Up-then-down Gibbs chain on one level of the Jack graph.
class UpDownChain {
 public:
  UpDownChain(const ZMeasure& measure, int n);

  int level() const { return n_; }
  const std::vector<Partition>& states() const { return states_; }

  Partition step(const Partition& eta, CounterRng& rng) const;
  std::size_t step_index(std::size_t i, CounterRng& rng) const;

  /// Runs `chains` independent chains from (n) with stream c for chain c; each
  /// discards `burn_in` steps then records `samples / chains` states.
  EmpiricalLaw simulate(std::uint64_t burn_in, std::uint64_t samples, std::uint64_t seed, int chains = 1) const;

  /// Exact one-step transition matrix over states().
  std::vector<std::vector<Rational>> transition_matrix() const;
  /// Exact solution of pi P = pi, sum pi = 1.
  std::vector<Rational> stationary() const;

 private:
  const ZMeasure& measure_;
  int n_;
  std::vector<Partition> states_;
  std::vector<Partition> upper_;
  std::vector<std::vector<std::pair<std::size_t, double>>> up_cdf_;    // into upper_
  std::vector<std::vector<std::pair<std::size_t, double>>> down_cdf_;  // into states_
};

/// Exact solve of A x = b over the rationals (Gaussian elimination, ConsistencyError if singular).
std::vector<Rational> solve_exact(std::vector<std::vector<Rational>> a, std::vector<Rational> b);

}  // namespace zmd
