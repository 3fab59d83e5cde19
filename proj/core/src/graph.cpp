#include "zmd/graph.hpp"

#include "zmd/errors.hpp"

namespace zmd {

GraphKind GraphKind::jack(const Rational& vartheta) {
  if (vartheta <= 0) throw DomainError("Jack graph parameter must be positive");
  return GraphKind(false, vartheta);
}

std::string GraphKind::name() const {
  return kingman_ ? std::string("kingman") : "jack(" + to_fraction_string(vartheta_) + ")";
}

Rational edge_weight(const GraphKind& kind, const Partition& eta, const Partition& zeta) {
  auto box = added_box(eta, zeta);
  if (!box) throw DomainError("edge_weight: " + zeta.to_string() + " does not cover " + eta.to_string());
  if (kind.is_kingman()) return Rational(zeta.multiplicity(zeta.part(box->row)));

  const Rational& th = kind.vartheta();
  Rational w{1};
  const int j = box->col;
  for (int i = 1; eta.part(i) >= j && i <= eta.length(); ++i) {
    auto [arm, leg] = arm_leg(eta, {i, j});
    Rational a(arm);
    Rational l(leg);
    w *= (a + (l + 2) * th) * (a + 1 + l * th);
    w /= (a + 1 + (l + 1) * th) * (a + (l + 1) * th);
  }
  return w;
}

HookProducts hook_products(const Partition& eta, const Rational& vartheta) {
  HookProducts h{Rational(1), Rational(1)};
  for (const Box& b : eta.boxes()) {
    auto [arm, leg] = arm_leg(eta, b);
    h.H *= Rational(arm) + 1 + Rational(leg) * vartheta;
    h.Hprime *= Rational(arm) + (1 + Rational(leg)) * vartheta;
  }
  return h;
}

BranchingGraph::BranchingGraph(GraphKind kind) : kind_(std::move(kind)) {
  dims_.push_back({{Partition{}, Rational(1)}});
}

void BranchingGraph::ensure_levels(int n) const {
  while (static_cast<int>(dims_.size()) <= n) {
    const int level = static_cast<int>(dims_.size());
    std::map<Partition, Rational> next;
    for (const Partition& zeta : enumerate_partitions(level)) {
      Rational d{0};
      for (const Cover& c : cocovers(zeta)) d += edge_weight(kind_, c.partition, zeta) * dims_[level - 1].at(c.partition);
      next.emplace(zeta, std::move(d));
    }
    dims_.push_back(std::move(next));
  }
}

Rational BranchingGraph::dim(const Partition& eta) const {
  std::lock_guard lock(mu_);
  ensure_levels(eta.size());
  return dims_[eta.size()].at(eta);
}

std::map<Partition, Rational> BranchingGraph::level_dims(int n) const {
  std::lock_guard lock(mu_);
  ensure_levels(n);
  return dims_[n];
}

std::map<Partition, Rational> BranchingGraph::relative_dims_to(const Partition& nu) const {
  {
    std::lock_guard lock(mu_);
    if (auto it = relative_.find(nu); it != relative_.end()) return *it->second;
  }
  // backward recursion from nu: rel(eta) = sum over covers mu of eta inside nu of chi(eta,mu) rel(mu)
  std::vector<Partition> inside = subpartitions(nu);
  std::vector<std::vector<const Partition*>> by_level(nu.size() + 1);
  for (const auto& p : inside) by_level[p.size()].push_back(&p);
  std::map<Partition, Rational> rel;
  rel.emplace(nu, Rational(1));
  for (int level = nu.size() - 1; level >= 0; --level) {
    for (const Partition* eta : by_level[level]) {
      Rational total{0};
      for (const Cover& c : covers(*eta)) {
        auto it = rel.find(c.partition);
        if (it != rel.end()) total += edge_weight(kind_, *eta, c.partition) * it->second;
      }
      rel.emplace(*eta, std::move(total));
    }
  }
  auto shared = std::make_shared<const std::map<Partition, Rational>>(std::move(rel));
  std::lock_guard lock(mu_);
  relative_.emplace(nu, shared);
  return *shared;
}

Rational BranchingGraph::relative_dim(const Partition& eta, const Partition& nu) const {
  if (!nu.contains(eta)) throw DomainError("relative_dim: " + eta.to_string() + " is not inside " + nu.to_string());
  if (eta == nu) return Rational(1);
  return relative_dims_to(nu).at(eta);
}

std::map<Partition, Rational> BranchingGraph::down_prob(const Partition& zeta) const {
  if (zeta.empty()) throw DomainError("down_prob: the empty partition has no cocovers");
  const Rational dz = dim(zeta);
  std::map<Partition, Rational> out;
  for (const Cover& c : cocovers(zeta)) out.emplace(c.partition, edge_weight(kind_, c.partition, zeta) * dim(c.partition) / dz);
  return out;
}

Rational BranchingGraph::kernel_H(const Partition& eta, const Partition& nu) const {
  if (!nu.contains(eta)) throw DomainError("kernel_H: " + eta.to_string() + " is not inside " + nu.to_string());
  return dim(eta) * relative_dim(eta, nu) / dim(nu);
}

}  // namespace zmd
