#pragma once

#include <map>
#include <vector>

#include "zmd/rational.hpp"
#include "zmd/symfunc.hpp"

namespace zmd {

/// Polynomial in a fixed number of variables with exact coefficients,
/// keyed by exponent vectors.
class MultiPoly {
 public:
  explicit MultiPoly(int nvars = 0) : nvars_(nvars) {}

  /// m_mu in n variables.
  static MultiPoly monomial_symmetric(const Partition& mu, int n);
  /// Symmetric function given in the monomial basis, realized in n variables.
  static MultiPoly from_monomials(const CoeffMap& f, int n);

  int nvars() const { return nvars_; }
  const std::map<std::vector<int>, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const std::vector<int>& exponent, const Rational& c);
  MultiPoly& operator+=(const MultiPoly& other);
  MultiPoly& operator*=(const Rational& c);

  bool is_symmetric() const;
  /// Coefficients of the non-increasing exponents, i.e. the monomial-basis form.
  CoeffMap to_monomials() const;

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

 private:
  int nvars_;
  std::map<std::vector<int>, Rational> terms_;
};

/// Exact quotient by x_i - x_j (0-indexed); ConsistencyError if not divisible.
MultiPoly divide_by_difference(const MultiPoly& g, int i, int j);
/// Exact quotient by prod_{i<j} (x_i - x_j).
MultiPoly divide_by_vandermonde(const MultiPoly& g);

/// Applies the determinantal operator
///   D(u) = V^{-1} det[x_i^{n-j} (x_i d/dx_i + (n-j) vartheta + u)]
/// to a symmetric f by the signed-permutation expansion. Entry k of the result
/// is the coefficient of u^k. Requires n <= 8.
std::vector<MultiPoly> sekiguchi_apply(const MultiPoly& f, const Rational& vartheta);

}  // namespace zmd
