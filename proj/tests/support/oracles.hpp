#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "zmd/graph.hpp"
#include "zmd/partition.hpp"

namespace zmd::testing {

// p(n) through the pentagonal number theorem.
inline std::vector<std::int64_t> pentagonal_counts(int n_max) {
  std::vector<std::int64_t> p(n_max + 1, 0);
  p[0] = 1;
  for (int n = 1; n <= n_max; ++n) {
    std::int64_t s = 0;
    for (int k = 1;; ++k) {
      const int g1 = k * (3 * k - 1) / 2;
      const int g2 = k * (3 * k + 1) / 2;
      if (g1 > n) break;
      const int sign = (k % 2 == 1) ? 1 : -1;
      s += sign * p[n - g1];
      if (g2 <= n) s += sign * p[n - g2];
    }
    p[n] = s;
  }
  return p;
}

// Weighted count of saturated chains eta -> nu, by walking every path.
inline Rational path_weight(const GraphKind& kind, const Partition& eta, const Partition& nu) {
  if (eta == nu) return Rational(1);
  if (eta.size() >= nu.size()) return Rational(0);
  Rational total(0);
  for (const auto& c : covers(eta)) {
    if (!nu.contains(c.partition)) continue;
    total += edge_weight(kind, eta, c.partition) * path_weight(kind, c.partition, nu);
  }
  return total;
}

// Law after running the one-step down chain from nu until level `level`.
inline std::map<Partition, Rational> down_chain_law(const BranchingGraph& g, const Partition& nu, int level) {
  std::map<Partition, Rational> law{{nu, Rational(1)}};
  for (int n = nu.size(); n > level; --n) {
    std::map<Partition, Rational> next;
    for (const auto& [zeta, w] : law)
      for (const auto& [eta, p] : g.down_prob(zeta)) next[eta] += w * p;
    law = std::move(next);
  }
  return law;
}

}  // namespace zmd::testing
