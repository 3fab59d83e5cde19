#include "zmd/coalescent.hpp"

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>

#include "zmd/errors.hpp"

namespace zmd {

namespace {

using Extended = boost::multiprecision::cpp_bin_float_50;

// Neumaier compensated sum.
template <class T>
struct Compensated {
  T sum = 0;
  T carry = 0;
  void add(const T& x) {
    T s = sum + x;
    using std::abs;
    using boost::multiprecision::abs;
    if (abs(sum) >= abs(x))
      carry += (sum - s) + x;
    else
      carry += (x - s) + sum;
    sum = s;
  }
  T value() const { return sum + carry; }
};

template <class T>
T exp_of(const T& x) {
  using std::exp;
  using boost::multiprecision::exp;
  return exp(x);
}

template <class T>
struct Raw {
  T value;
  T max_term;
  int terms;
};

template <class T>
Raw<T> d_mn_sum(const T& t, int m, int n, const T& theta) {
  // A_k = (n+theta)_{(k-1)} / (n! (k-n)!) * m_[k] / (theta+m)_(k)
  T a = 1;
  for (int i = 0; i < n; ++i) a *= T(m - i) / (theta + m + i);
  for (int i = 0; i < n - 1; ++i) a *= (n + theta + i);
  for (int i = 2; i <= n; ++i) a /= i;
  Compensated<T> acc;
  T biggest = 0;
  int count = 0;
  for (int k = n; k <= m; ++k) {
    const T lam = T(k) * (k - 1 + theta) / 2;
    T term = (2 * k + theta - 1) * a * exp_of<T>(-lam * t);
    if ((k - n) % 2) term = -term;
    using std::abs;
    using boost::multiprecision::abs;
    if (abs(term) > biggest) biggest = abs(term);
    acc.add(term);
    ++count;
    if (k < m) a *= (n + theta + k - 1) * T(m - k) / (T(k + 1 - n) * (theta + m + k));
  }
  return {acc.value(), biggest, count};
}

template <class T>
Raw<T> d_n_sum(const T& t, int n, const T& theta) {
  const int m0 = std::max(n, 1);
  // B_m = C(m,n) (n+theta)_{(m-1)} / m!
  T b = 1;
  if (n >= 1) {
    for (int i = 0; i < n - 1; ++i) b *= (n + theta + i);
    for (int i = 2; i <= n; ++i) b /= i;
  }
  Compensated<T> acc;
  T biggest = 0;
  T prev = 0;
  int count = 0;
  using std::abs;
  using boost::multiprecision::abs;
  for (int m = m0; m < 100000; ++m) {
    const T lam = T(m) * (m - 1 + theta) / 2;
    T term = (2 * m - 1 + theta) * b * exp_of<T>(-lam * t);
    if ((m - n) % 2) term = -term;
    if (abs(term) > biggest) biggest = abs(term);
    acc.add(term);
    ++count;
    const T mag = abs(term);
    // lambda_m grows quadratically, so once terms shrink geometrically the tail is below 2|term|
    if (m > m0 + 1 && mag <= prev / 2 && mag <= T(1e-17) * (abs(acc.value()) + T(1e-300))) break;
    if (m > m0 + 1 && mag == 0) break;
    prev = mag;
    b *= (n + theta + m - 1) / T(m + 1 - n);
  }
  return {acc.value(), biggest, count};
}

template <class Fn>
SeriesValue evaluate(Precision precision, double threshold_double, double threshold_ext, Fn&& fn) {
  SeriesValue out;
  if (precision != Precision::Extended) {
    auto r = fn(double{});
    out.value = r.value;
    out.max_term = r.max_term;
    out.terms = r.terms;
    out.unstable = r.max_term > threshold_double * std::abs(r.value) && r.max_term > 1e-300;
    if (!out.unstable || precision == Precision::Double) return out;
  }
  auto r = fn(Extended{});
  out.value = static_cast<double>(r.value);
  out.max_term = static_cast<double>(r.max_term);
  out.terms = r.terms;
  out.extended = true;
  out.unstable = r.max_term > Extended(threshold_ext) * boost::multiprecision::abs(r.value) && r.max_term > Extended(1e-300);
  return out;
}

constexpr double kUnstableDouble = 1e12;
constexpr double kUnstableExtended = 1e40;

}  // namespace

double lambda(int m, double theta) { return 0.5 * m * (m - 1 + theta); }

SeriesValue d_mn(double t, int m, int n, double theta, Precision precision) {
  if (theta <= 0) throw DomainError("theta must be positive");
  if (n < 1 || n > m) throw DomainError("d_mn needs 1 <= n <= m");
  if (t < 0) throw DomainError("t must be nonnegative");
  if (t == 0) return {n == m ? 1.0 : 0.0, 1.0, 0, false, false};
  return evaluate(precision, kUnstableDouble, kUnstableExtended, [&](auto tag) {
    using T = decltype(tag);
    return d_mn_sum<T>(T(t), m, n, T(theta));
  });
}

SeriesValue d_n(double t, int n, double theta, Precision precision, double t_min) {
  if (theta <= 0) throw DomainError("theta must be positive");
  if (n < 0) throw DomainError("d_n needs n >= 0");
  if (t <= 0) throw DomainError("d_n needs t > 0");
  SeriesValue v = evaluate(precision, kUnstableDouble, kUnstableExtended, [&](auto tag) {
    using T = decltype(tag);
    auto r = d_n_sum<T>(T(t), n, T(theta));
    if (n == 0) r.value += 1;
    return r;
  });
  if (t < t_min) v.unstable = true;
  return v;
}

double d1_tilde(double t, double theta, Precision precision) {
  return d_n(t, 0, theta, precision).value + d_n(t, 1, theta, precision).value;
}

double CoeffTable::sum() const {
  double s = 0.0;
  for (double v : values) s += v;
  return s;
}

void CoeffTable::validate(double eps) const {
  for (std::size_t n = 0; n < values.size(); ++n)
    if (values[n] < -eps || values[n] > 1 + eps)
      throw ConsistencyError("coefficient " + std::to_string(n) + " out of range: " + std::to_string(values[n]));
  if (std::abs(sum() - 1.0) > eps) throw ConsistencyError("coefficients do not sum to 1");
}

CoeffTable d_mn_table(double t, int m, double theta, Precision precision) {
  if (m < 0) throw DomainError("m must be nonnegative");
  CoeffTable table;
  table.theta = theta;
  table.t = t;
  table.m = m;
  table.values.assign(m + 1, 0.0);
  double rest = 0.0;
  for (int n = 1; n <= m; ++n) {
    SeriesValue v = d_mn(t, m, n, theta, precision);
    table.values[n] = v.value;
    table.unstable = table.unstable || v.unstable;
    rest += v.value;
  }
  table.values[0] = m == 0 ? 1.0 : 1.0 - rest;
  return table;
}

CoeffTable d_n_table(double t, double theta, Precision precision, int n_cap) {
  CoeffTable table;
  table.theta = theta;
  table.t = t;
  table.m = -1;
  for (int n = 0; n <= n_cap; ++n) {
    SeriesValue v = d_n(t, n, theta, precision);
    table.values.push_back(v.value);
    table.unstable = table.unstable || v.unstable;
    if (n >= 2 && std::abs(v.value) < 1e-17) break;
  }
  return table;
}

std::vector<double> death_chain_expm_oracle(int m, double theta, double t) {
  if (m < 0 || m > 60) throw CapacityError("expm oracle supports 0 <= m <= 60");
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(m + 1, m + 1);
  for (int k = 1; k <= m; ++k) {
    q(k, k) = -lambda(k, theta);
    q(k, k - 1) = lambda(k, theta);
  }
  Eigen::MatrixXd p = (q * t).exp();
  std::vector<double> row(m + 1);
  for (int n = 0; n <= m; ++n) row[n] = p(m, n);
  return row;
}

void attach_oracle(CoeffTable& table) {
  if (table.m < 0) throw DomainError("oracle needs a finite source level");
  const auto row = death_chain_expm_oracle(table.m, table.theta, table.t);
  double worst = 0.0;
  for (std::size_t n = 0; n < row.size(); ++n) worst = std::max(worst, std::abs(row[n] - table.values[n]));
  table.oracle_error = worst;
}

TailCheck tail_bound_check(double t, double theta) {
  TailCheck c;
  c.t = t;
  c.theta = theta;
  const CoeffTable table = d_n_table(t, theta);
  for (std::size_t n = 2; n < table.values.size(); ++n) c.lhs += table.values[n];
  c.rhs = 0.5 * (theta + 1) * (theta + 2) * std::exp(-(theta + 1) * t);
  c.ok = c.lhs <= c.rhs + 1e-10;
  return c;
}

}  // namespace zmd
