#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "zmd/partition.hpp"
#include "zmd/rational.hpp"

namespace zmd {

/// Finitely supported point (alpha; beta) of the Thoma simplex with rational
/// coordinates. gamma = 1 - sum(alpha) - sum(beta) is the residual mass.
class ThomaPoint {
 public:
  ThomaPoint() = default;
  ThomaPoint(std::vector<Rational> alpha, std::vector<Rational> beta);

  /// "a=0.5,0.3;b=0.1" (either list may be omitted or empty).
  static ThomaPoint parse(std::string_view text);

  const std::vector<Rational>& alpha() const { return alpha_; }
  const std::vector<Rational>& beta() const { return beta_; }
  Rational gamma() const;

  /// Image of the power sum p_k under the specialization with Jack parameter
  /// vartheta: 1 for k = 1, otherwise sum alpha^k + (-vartheta)^(k-1) sum beta^k.
  Rational power_sum(int k, const Rational& vartheta) const;
  double power_sum_double(int k, double vartheta) const;

  std::string to_string() const;

 private:
  std::vector<Rational> alpha_;
  std::vector<Rational> beta_;
};

/// Frobenius coordinates of eta divided by n = |eta|: a point of the simplex with gamma = 0.
ThomaPoint scaled_frobenius(const Partition& eta);

}  // namespace zmd
