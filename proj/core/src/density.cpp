#include "zmd/density.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "zmd/errors.hpp"
#include "zmd/parallel.hpp"
#include "zmd/rng.hpp"

namespace zmd {

DensityModel::DensityModel(const ZMeasure& measure, const SymmetricAlgebra& algebra) : measure_(measure), algebra_(algebra) {}

const JLevelEvaluator& DensityModel::evaluator(int n) const {
  std::lock_guard lock(mu_);
  auto& slot = evaluators_[n];
  if (!slot) slot = std::make_unique<JLevelEvaluator>(algebra_, n, measure_.params().vartheta);
  return *slot;
}

double DensityModel::kernel_K(int n, const ThomaPoint& sigma, const ThomaPoint& omega) const {
  if (n < 0) throw DomainError("kernel level must be nonnegative");
  if (n <= 1) return 1.0;
  const JLevelEvaluator& ev = evaluator(n);
  const auto js = ev.evaluate(sigma);
  const auto jo = ev.evaluate(omega);
  auto table = measure_.level(n);
  double total = 0.0;
  for (std::size_t i = 0; i < ev.partitions().size(); ++i) {
    const double m = table->raw_d[table->index(ev.partitions()[i])];
    if (m == 0) throw ParameterError("zero Z-mass at " + ev.partitions()[i].to_string());
    total += js[i] * jo[i] / m;
  }
  return total;
}

std::vector<double> DensityModel::kernels(int max_n, const ThomaPoint& sigma, const ThomaPoint& omega) const {
  std::vector<double> k(max_n + 1);
  for (int n = 0; n <= max_n; ++n) k[n] = kernel_K(n, sigma, omega);
  return k;
}

double DensityModel::g_coefficient(int m, int n, double theta) {
  double c = (theta + 2 * m - 1);
  for (int i = 0; i < m - 1; ++i) c *= (theta + n + i);
  // C(m,n)/m! = 1/(n!(m-n)!)
  for (int i = 2; i <= n; ++i) c /= i;
  for (int i = 2; i <= m - n; ++i) c /= i;
  return (m - n) % 2 ? -c : c;
}

namespace {

double g_from_kernels(int m, const std::vector<double>& k, double theta) {
  double sum = 0.0, carry = 0.0;
  for (int n = 0; n <= m; ++n) {
    const double x = DensityModel::g_coefficient(m, n, theta) * k[n];
    const double s = sum + x;
    carry += std::abs(sum) >= std::abs(x) ? (sum - s) + x : (x - s) + sum;
    sum = s;
  }
  return sum + carry;
}

}  // namespace

double DensityModel::g_m(int m, const ThomaPoint& sigma, const ThomaPoint& omega) const {
  if (m < 0) throw DomainError("m must be nonnegative");
  return g_from_kernels(m, kernels(m, sigma, omega), measure_.params().theta_d());
}

double DensityModel::q_spectral(double t, const ThomaPoint& sigma, const ThomaPoint& omega, int truncation) const {
  const double theta = measure_.params().theta_d();
  const auto k = kernels(truncation, sigma, omega);
  double q = 1.0;
  for (int m = 2; m <= truncation; ++m) q += std::exp(-t * lambda(m, theta)) * g_from_kernels(m, k, theta);
  return q;
}

double DensityModel::q_mixture(double t, const ThomaPoint& sigma, const ThomaPoint& omega, int truncation) const {
  const double theta = measure_.params().theta_d();
  const auto k = kernels(truncation, sigma, omega);
  double q = 0.0;
  for (int n = 0; n <= truncation; ++n) q += d_n(t, n, theta).value * k[n];
  return q;
}

DensityEval DensityModel::evaluate(double t, const ThomaPoint& sigma, const ThomaPoint& omega, int truncation) const {
  if (truncation < 2) throw DomainError("truncation must be at least 2");
  const double theta = measure_.params().theta_d();
  DensityEval e;
  e.t = t;
  e.sigma = sigma;
  e.omega = omega;
  e.truncation = truncation;
  e.kernels = kernels(truncation, sigma, omega);

  e.g.assign(truncation + 1, 0.0);
  e.g[0] = 1.0;
  e.value_spectral = 1.0;
  double magnitude = 1.0;
  for (int m = 2; m <= truncation; ++m) {
    e.g[m] = g_from_kernels(m, e.kernels, theta);
    double row = 0.0;
    for (int n = 0; n <= m; ++n) row += std::abs(g_coefficient(m, n, theta) * e.kernels[n]);
    const double decay = std::exp(-t * lambda(m, theta));
    e.value_spectral += decay * e.g[m];
    magnitude += decay * row;
  }

  e.value_mixture = 0.0;
  for (int n = 0; n <= truncation; ++n) {
    SeriesValue d = d_n(t, n, theta);
    e.unstable = e.unstable || d.unstable;
    e.value_mixture += d.value * e.kernels[n];
    magnitude += std::max(std::abs(d.value), d.max_term) * std::abs(e.kernels[n]);
  }
  e.rounding = 64 * std::numeric_limits<double>::epsilon() * magnitude;

  // terms m > N of sum_m e^{-lambda_m t} sum_{n <= N} c(m,n) K_n, bounded coefficient-wise
  for (int m = truncation + 1; m < 100000; ++m) {
    double row = 0.0;
    for (int n = 0; n <= truncation; ++n) row += std::abs(g_coefficient(m, n, theta)) * std::abs(e.kernels[n]);
    const double term = std::exp(-t * lambda(m, theta)) * row;
    e.tail_spectral += term;
    if (term < 1e-18 * (1.0 + e.tail_spectral) && m > truncation + 2) break;
  }

  const CoeffTable table = d_n_table(t, theta);
  double kmax = 1.0;
  for (double k : e.kernels) kmax = std::max(kmax, std::abs(k));
  double coeff_tail = 0.0;
  for (std::size_t n = truncation + 1; n < table.values.size(); ++n) coeff_tail += std::abs(table.values[n]);
  e.tail_mixture = coeff_tail * kmax;
  e.tail_estimate = e.tail_spectral + e.tail_mixture + e.rounding;

  // least-squares fit of log|G_m| = log c + d m log m
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int cnt = 0;
  for (int m = 2; m <= truncation; ++m) {
    if (e.g[m] == 0) continue;
    const double x = m * std::log(static_cast<double>(m));
    const double y = std::log(std::abs(e.g[m]));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++cnt;
  }
  if (cnt >= 2 && cnt * sxx - sx * sx != 0) {
    e.growth_d = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
    e.growth_c = std::exp((sy - e.growth_d * sx) / cnt);
  }
  return e;
}

ErgodicBound ergodic_bound(double t, double theta) {
  const TailCheck c = tail_bound_check(t, theta);
  return {t, theta, c.rhs, c.lhs};
}

std::vector<ThomaPoint> seeded_thoma_points(std::size_t count, std::uint64_t seed) {
  std::vector<ThomaPoint> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    CounterRng rng(seed, i);
    const int na = static_cast<int>(rng() % 4);
    const int nb = static_cast<int>(rng() % 3);
    std::vector<long> w(na + nb + 1);
    long total = 0;
    for (auto& x : w) {
      x = 1 + static_cast<long>(rng() % 20);
      total += x;
    }
    std::vector<Rational> a, b;
    for (int k = 0; k < na; ++k) a.push_back(Rational(w[k]) / total);
    for (int k = 0; k < nb; ++k) b.push_back(Rational(w[na + k]) / total);
    std::sort(a.begin(), a.end(), std::greater<>());
    std::sort(b.begin(), b.end(), std::greater<>());
    out.emplace_back(std::move(a), std::move(b));
  }
  return out;
}

ProbeResult weak_convergence_probe(const Partition& zeta, int m, const ZMeasure& measure, const SymmetricAlgebra& algebra) {
  if (measure.params().vartheta != 1) throw ParameterError("weak_convergence_probe is defined for vartheta = 1 only");
  if (m < 1) throw DomainError("probe level must be positive");
  ProbeResult r;
  r.zeta = zeta;
  r.m = m;
  auto table = measure.level(m);
  const CoeffMap j = algebra.j_in_power_sums(zeta, Rational(1));
  std::vector<double> contrib(table->partitions.size());
  parallel_for(table->partitions.size(), [&](std::size_t i) {
    const ThomaPoint w = scaled_frobenius(table->partitions[i]);
    double v = 0.0;
    for (const auto& [lambda, c] : j) {
      double term = to_double(c);
      for (int k : lambda.parts()) term *= w.power_sum_double(k, 1.0);
      v += term;
    }
    contrib[i] = table->normalized_d[i] * v;
  });
  for (double c : contrib) r.approx += c;
  r.target = zeta.empty() ? 1.0 : measure.mass(zeta);
  r.gap = std::abs(r.approx - r.target);
  return r;
}

}  // namespace zmd
