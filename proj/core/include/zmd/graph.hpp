#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "zmd/partition.hpp"
#include "zmd/rational.hpp"

namespace zmd {

/// Kingman graph (monomial Pieri weights) or Jack graph with parameter vartheta > 0.
/// Jack(1) is the Young graph.
class GraphKind {
 public:
  static GraphKind kingman() { return GraphKind(true, Rational(1)); }
  static GraphKind jack(const Rational& vartheta);

  bool is_kingman() const { return kingman_; }
  bool is_jack() const { return !kingman_; }
  const Rational& vartheta() const { return vartheta_; }
  std::string name() const;

  friend bool operator==(const GraphKind& a, const GraphKind& b) {
    return a.kingman_ == b.kingman_ && (a.kingman_ || a.vartheta_ == b.vartheta_);
  }

 private:
  GraphKind(bool kingman, Rational vartheta) : kingman_(kingman), vartheta_(std::move(vartheta)) {}
  bool kingman_;
  Rational vartheta_;
};

/// chi(eta, zeta) for a cover pair; DomainError otherwise.
Rational edge_weight(const GraphKind& kind, const Partition& eta, const Partition& zeta);

struct HookProducts {
  Rational H;       // prod (a + 1 + l*vartheta)
  Rational Hprime;  // prod (a + (1 + l)*vartheta)
};

HookProducts hook_products(const Partition& eta, const Rational& vartheta);

/// Dimensions, relative dimensions and down-chain laws of one branching graph.
///
/// Dimensions come from the level recursion dim(zeta) = sum chi(eta,zeta) dim(eta),
/// which is the single source of truth; closed forms are only checked in tests.
/// Caches are guarded internally, so one instance can be shared across threads.
class BranchingGraph {
 public:
  explicit BranchingGraph(GraphKind kind);

  const GraphKind& kind() const { return kind_; }

  Rational dim(const Partition& eta) const;

  /// Total path weight from eta up to nu (1 when equal); DomainError unless eta is inside nu.
  Rational relative_dim(const Partition& eta, const Partition& nu) const;

  /// relative_dim(eta, nu) for every eta inside nu.
  std::map<Partition, Rational> relative_dims_to(const Partition& nu) const;

  /// p_down(zeta, eta) = chi(eta,zeta) dim(eta) / dim(zeta) over the cocovers of zeta.
  std::map<Partition, Rational> down_prob(const Partition& zeta) const;

  /// dim(eta) relative_dim(eta,nu) / dim(nu): the law of the |nu|-|eta| step down chain.
  Rational kernel_H(const Partition& eta, const Partition& nu) const;

  /// Dimension table of level n, keyed by partition.
  std::map<Partition, Rational> level_dims(int n) const;

 private:
  void ensure_levels(int n) const;  // requires mu_ held

  GraphKind kind_;
  mutable std::mutex mu_;
  mutable std::vector<std::map<Partition, Rational>> dims_;
  mutable std::map<Partition, std::shared_ptr<const std::map<Partition, Rational>>> relative_;
};

}  // namespace zmd
