#pragma once

#include <limits>
#include <string>
#include <vector>

namespace zmd {

enum class Precision { Double, Extended, Auto };

/// One alternating-series evaluation with its diagnostics.
struct SeriesValue {
  double value = 0.0;
  double max_term = 0.0;  // largest |term| seen
  int terms = 0;
  bool unstable = false;  // cancellation too large for the precision actually used
  bool extended = false;  // value came from the 50-digit evaluation
};

/// lambda_m = m(m - 1 + theta)/2.
double lambda(int m, double theta);

/// d_mn(t) for 1 <= n <= m by the finite alternating sum.
SeriesValue d_mn(double t, int m, int n, double theta, Precision precision = Precision::Auto);

/// d_n(t) by the infinite series (n >= 1), d_0 as one plus the n = 0 series.
/// Flags instability for t below t_min.
SeriesValue d_n(double t, int n, double theta, Precision precision = Precision::Auto, double t_min = 0.02);

/// d_0(t) + d_1(t): the level-one mass when 0 and 1 are merged.
double d1_tilde(double t, double theta, Precision precision = Precision::Auto);

/// Row of coefficients indexed by n. m < 0 marks the m -> infinity family.
struct CoeffTable {
  double theta = 1.0;
  double t = 0.0;
  int m = 0;
  std::vector<double> values;
  bool unstable = false;
  double oracle_error = std::numeric_limits<double>::quiet_NaN();

  double sum() const;
  /// ConsistencyError unless entries lie in [-eps, 1+eps] and sum to 1 within eps.
  void validate(double eps = 1e-10) const;
};

/// d_m0..d_mm with d_m0 the complement.
CoeffTable d_mn_table(double t, int m, double theta, Precision precision = Precision::Auto);

/// d_0..d_N with N grown until d_N < 1e-17 (at most n_cap).
CoeffTable d_n_table(double t, double theta, Precision precision = Precision::Auto, int n_cap = 200);

/// Row m of exp(tQ) for the pure-death chain on {0..m} with rate lambda_k from k.
std::vector<double> death_chain_expm_oracle(int m, double theta, double t);

/// Fills oracle_error with the max deviation from the expm oracle.
void attach_oracle(CoeffTable& table);

struct TailCheck {
  double t = 0.0;
  double theta = 0.0;
  double lhs = 0.0;  // sum_{n >= 2} d_n(t)
  double rhs = 0.0;  // (theta+1)(theta+2)/2 exp(-(theta+1) t)
  bool ok = false;   // lhs <= rhs + 1e-10
};

TailCheck tail_bound_check(double t, double theta);

}  // namespace zmd
