#include "zmd/sekiguchi.hpp"

#include <algorithm>
#include <numeric>

#include "zmd/errors.hpp"

namespace zmd {

void MultiPoly::add_term(const std::vector<int>& exponent, const Rational& c) {
  if (static_cast<int>(exponent.size()) != nvars_) throw DomainError("MultiPoly: exponent length mismatch");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(exponent, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& other) {
  if (other.nvars_ != nvars_) throw DomainError("MultiPoly: variable count mismatch");
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

MultiPoly& MultiPoly::operator*=(const Rational& c) {
  if (c == 0) terms_.clear();
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

MultiPoly MultiPoly::monomial_symmetric(const Partition& mu, int n) {
  MultiPoly out(n);
  if (mu.length() > n) return out;
  std::vector<int> a(mu.parts());
  a.resize(n, 0);
  std::sort(a.begin(), a.end());
  do out.add_term(a, Rational(1));
  while (std::next_permutation(a.begin(), a.end()));
  return out;
}

MultiPoly MultiPoly::from_monomials(const CoeffMap& f, int n) {
  MultiPoly out(n);
  for (const auto& [mu, c] : f) {
    MultiPoly m = monomial_symmetric(mu, n);
    m *= c;
    out += m;
  }
  return out;
}

bool MultiPoly::is_symmetric() const {
  for (const auto& [e, c] : terms_) {
    for (int i = 0; i + 1 < nvars_; ++i) {
      std::vector<int> s(e);
      std::swap(s[i], s[i + 1]);
      auto it = terms_.find(s);
      if (it == terms_.end() || it->second != c) return false;
    }
  }
  return true;
}

CoeffMap MultiPoly::to_monomials() const {
  CoeffMap out;
  for (const auto& [e, c] : terms_) {
    if (!std::is_sorted(e.begin(), e.end(), std::greater<>())) continue;
    std::vector<int> parts(e);
    while (!parts.empty() && parts.back() == 0) parts.pop_back();
    out.emplace(Partition(std::move(parts)), c);
  }
  return out;
}

MultiPoly divide_by_difference(const MultiPoly& g, int i, int j) {
  std::map<std::vector<int>, Rational> rest(g.terms());
  MultiPoly q(g.nvars());
  while (!rest.empty()) {
    auto top = std::max_element(rest.begin(), rest.end(), [i](const auto& a, const auto& b) { return a.first[i] < b.first[i]; });
    if (top->first[i] == 0) throw ConsistencyError("inexact division by a variable difference");
    std::vector<int> e = top->first;
    const Rational c = top->second;
    rest.erase(top);
    e[i] -= 1;
    q.add_term(e, c);
    e[j] += 1;  // subtract -c x^{e} x_j
    auto [it, inserted] = rest.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) rest.erase(it);
    }
  }
  return q;
}

MultiPoly divide_by_vandermonde(const MultiPoly& g) {
  MultiPoly q = g;
  for (int i = 0; i < g.nvars(); ++i)
    for (int j = i + 1; j < g.nvars(); ++j) q = divide_by_difference(q, i, j);
  return q;
}

std::vector<MultiPoly> sekiguchi_apply(const MultiPoly& f, const Rational& vartheta) {
  const int n = f.nvars();
  if (n < 1 || n > 8) throw CapacityError("sekiguchi_apply: needs 1 <= n <= 8");
  if (!f.is_symmetric()) throw ConsistencyError("sekiguchi_apply: input is not symmetric");
  std::vector<MultiPoly> numer(n + 1, MultiPoly(n));
  std::vector<int> w(n);
  std::iota(w.begin(), w.end(), 0);
  do {
    int inversions = 0;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        if (w[a] > w[b]) ++inversions;
    const Rational sign = inversions % 2 ? Rational(-1) : Rational(1);
    for (const auto& [e, c] : f.terms()) {
      // prod_i (u + e_i + (n - 1 - w_i) vartheta), expanded in u
      std::vector<Rational> poly{Rational(1)};
      std::vector<int> shifted(e);
      for (int i = 0; i < n; ++i) {
        const int s = n - 1 - w[i];
        const Rational root = Rational(e[i]) + Rational(s) * vartheta;
        std::vector<Rational> next(poly.size() + 1, Rational(0));
        for (std::size_t k = 0; k < poly.size(); ++k) {
          next[k] += poly[k] * root;
          next[k + 1] += poly[k];
        }
        poly = std::move(next);
        shifted[i] += s;
      }
      for (int k = 0; k <= n; ++k) numer[k].add_term(shifted, sign * c * poly[k]);
    }
  } while (std::next_permutation(w.begin(), w.end()));
  std::vector<MultiPoly> out;
  out.reserve(n + 1);
  for (auto& g : numer) {
    MultiPoly q = divide_by_vandermonde(g);
    if (!q.is_symmetric()) throw ConsistencyError("sekiguchi_apply: result is not symmetric");
    out.push_back(std::move(q));
  }
  return out;
}

}  // namespace zmd
