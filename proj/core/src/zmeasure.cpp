#include "zmd/zmeasure.hpp"

#include <algorithm>
#include <cmath>

#include "zmd/errors.hpp"
#include "zmd/parallel.hpp"

namespace zmd {

namespace {

// Real z in Z_{<=0} + vartheta Z_{>=0}.
bool on_principal_lattice(const Rational& z, const Rational& vartheta) {
  const mpz_class q = vartheta.get_den();
  mpz_class b0 = 0;
  if (z > 0) {
    Rational r = z / vartheta;
    b0 = r.get_num() / r.get_den();
    if (b0 * vartheta < z) b0 += 1;
  }
  for (mpz_class b = b0; b < b0 + q; ++b) {
    Rational a = Rational(b) * vartheta - z;
    if (a >= 0 && a.get_den() == 1) return true;
  }
  return false;
}

// Index k with z in [k/q, (k+1)/q), and whether z sits on the lattice (1/q)Z.
std::pair<mpz_class, bool> lattice_cell(const Rational& z, const mpz_class& q) {
  Rational s = z * Rational(q);
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), s.get_num_mpz_t(), s.get_den_mpz_t());
  return {fl, s.get_den() == 1};
}

}  // namespace

ZParams ZParams::make(const GaussianRational& z, const GaussianRational& zprime, const Rational& vartheta) {
  if (vartheta <= 0) throw ParameterError("vartheta must be positive");
  ZParams p;
  p.z = z;
  p.zprime = zprime;
  p.vartheta = vartheta;
  const GaussianRational prod = z * zprime;
  if (prod.im != 0) throw ParameterError("z z' is not real");
  p.theta = prod.re / vartheta;
  if (p.theta <= 0) throw ParameterError("theta = z z'/vartheta must be positive");

  if (zprime == z.conj()) {
    if (z.is_real() && on_principal_lattice(z.re, vartheta))
      throw ParameterError("principal case: z lies in Z<=0 + vartheta Z>=0");
    p.kind = ParamCase::Principal;
    return p;
  }
  if (!z.is_real() || !zprime.is_real()) throw ParameterError("neither principal (z' = conj z) nor complementary (both real)");
  const mpz_class q = vartheta.get_den();
  auto [cz, onz] = lattice_cell(z.re, q);
  auto [czp, onzp] = lattice_cell(zprime.re, q);
  if (onz || onzp || cz != czp)
    throw ParameterError("complementary case: z and z' must lie strictly inside one cell of Z + vartheta Z");
  p.kind = ParamCase::Complementary;
  return p;
}

GaussianRational z_pochhammer(const GaussianRational& z, const Partition& eta, const Rational& vartheta) {
  GaussianRational out(Rational(1));
  for (const Box& b : eta.boxes()) out = out * (z + GaussianRational(Rational(b.col - 1) - Rational(b.row - 1) * vartheta));
  return out;
}

std::complex<double> z_pochhammer(std::complex<double> z, const Partition& eta, double vartheta) {
  std::complex<double> out(1.0, 0.0);
  for (const Box& b : eta.boxes()) out *= z + std::complex<double>((b.col - 1) - (b.row - 1) * vartheta, 0.0);
  return out;
}

std::size_t LevelTable::index(const Partition& eta) const {
  auto it = std::lower_bound(partitions.begin(), partitions.end(), eta, std::greater<>());
  if (it == partitions.end() || *it != eta) throw DomainError("partition " + eta.to_string() + " is not on level " + std::to_string(n));
  return static_cast<std::size_t>(it - partitions.begin());
}

ZMeasure::ZMeasure(ZParams params)
    : params_(std::move(params)), graph_(std::make_shared<BranchingGraph>(GraphKind::jack(params_.vartheta))) {}

std::shared_ptr<const LevelTable> ZMeasure::level(int n) const {
  if (n < 0) throw DomainError("negative level");
  {
    std::lock_guard lock(mu_);
    if (auto it = levels_.find(n); it != levels_.end()) return it->second;
  }
  auto table = std::make_shared<LevelTable>();
  table->n = n;
  table->partitions = enumerate_partitions(n);
  const auto dims = graph_->level_dims(n);
  const Rational theta_n = rising(params_.theta, static_cast<unsigned>(n));
  for (const Partition& eta : table->partitions) {
    Rational raw{1};
    if (n > 0) {
      const GaussianRational zz = z_pochhammer(params_.z, eta, params_.vartheta) * z_pochhammer(params_.zprime, eta, params_.vartheta);
      if (zz.im != 0) throw ConsistencyError("(z)_eta (z')_eta has a nonzero imaginary part at " + eta.to_string());
      raw = dims.at(eta) * zz.re / (theta_n * hook_products(eta, params_.vartheta).Hprime);
    }
    table->total += raw;
    table->raw.push_back(raw);
  }
  for (const Rational& r : table->raw) {
    table->normalized.push_back(r / table->total);
    table->raw_d.push_back(to_double(r));
    table->normalized_d.push_back(to_double(table->normalized.back()));
  }
  std::lock_guard lock(mu_);
  return levels_.emplace(n, std::move(table)).first->second;
}

Rational ZMeasure::raw_mass(const Partition& eta) const {
  auto t = level(eta.size());
  return t->raw[t->index(eta)];
}

double ZMeasure::mass(const Partition& eta) const { return to_double(raw_mass(eta)); }

std::map<Partition, Rational> ZMeasure::up_prob(const Partition& eta) const {
  const Rational m = raw_mass(eta);
  if (m == 0) throw DomainError("up_prob: zero mass at " + eta.to_string());
  const Rational de = graph_->dim(eta);
  std::map<Partition, Rational> out;
  for (const Cover& c : covers(eta)) {
    const Rational w = edge_weight(graph_->kind(), eta, c.partition);
    out.emplace(c.partition, w * raw_mass(c.partition) * de / (m * graph_->dim(c.partition)));
  }
  return out;
}

std::map<Partition, double> EmpiricalLaw::frequencies() const {
  std::map<Partition, double> out;
  for (std::size_t i = 0; i < states.size(); ++i) out[states[i]] = total ? static_cast<double>(counts[i]) / static_cast<double>(total) : 0.0;
  return out;
}

namespace {

std::size_t draw(const std::vector<std::pair<std::size_t, double>>& cdf, CounterRng& rng) {
  const double u = rng.uniform() * cdf.back().second;
  for (const auto& [idx, c] : cdf)
    if (u < c) return idx;
  return cdf.back().first;
}

}  // namespace

UpDownChain::UpDownChain(const ZMeasure& measure, int n) : measure_(measure), n_(n) {
  if (n < 1) throw DomainError("up-down chain needs level >= 1");
  auto lower = measure.level(n);
  auto upper = measure.level(n + 1);
  states_ = lower->partitions;
  upper_ = upper->partitions;
  for (const Partition& eta : states_) {
    std::vector<std::pair<std::size_t, double>> cdf;
    double acc = 0.0;
    for (const auto& [zeta, p] : measure.up_prob(eta)) {
      acc += to_double(p);
      cdf.emplace_back(upper->index(zeta), acc);
    }
    up_cdf_.push_back(std::move(cdf));
  }
  for (const Partition& zeta : upper_) {
    std::vector<std::pair<std::size_t, double>> cdf;
    double acc = 0.0;
    for (const auto& [eta, p] : measure.graph().down_prob(zeta)) {
      acc += to_double(p);
      cdf.emplace_back(lower->index(eta), acc);
    }
    down_cdf_.push_back(std::move(cdf));
  }
}

std::size_t UpDownChain::step_index(std::size_t i, CounterRng& rng) const {
  const std::size_t up = draw(up_cdf_[i], rng);
  return draw(down_cdf_[up], rng);
}

Partition UpDownChain::step(const Partition& eta, CounterRng& rng) const {
  auto lower = measure_.level(n_);
  return states_[step_index(lower->index(eta), rng)];
}

EmpiricalLaw UpDownChain::simulate(std::uint64_t burn_in, std::uint64_t samples, std::uint64_t seed, int chains) const {
  if (chains < 1) throw DomainError("simulate: chains must be positive");
  std::vector<std::vector<std::uint64_t>> counts(chains, std::vector<std::uint64_t>(states_.size(), 0));
  parallel_for(static_cast<std::size_t>(chains), [&](std::size_t c) {
    CounterRng rng(seed, c);
    std::size_t s = 0;  // the one-row partition (n) is first in reverse-lex order
    for (std::uint64_t k = 0; k < burn_in; ++k) s = step_index(s, rng);
    const std::uint64_t mine = samples / chains + (c < samples % chains ? 1 : 0);
    for (std::uint64_t k = 0; k < mine; ++k) {
      s = step_index(s, rng);
      ++counts[c][s];
    }
  });
  EmpiricalLaw law;
  law.states = states_;
  law.counts.assign(states_.size(), 0);
  for (const auto& row : counts)
    for (std::size_t i = 0; i < row.size(); ++i) law.counts[i] += row[i];
  for (auto c : law.counts) law.total += c;
  return law;
}

std::vector<std::vector<Rational>> UpDownChain::transition_matrix() const {
  auto lower = measure_.level(n_);
  auto upper = measure_.level(n_ + 1);
  const std::size_t k = states_.size();
  std::vector<std::vector<Rational>> p(k, std::vector<Rational>(k, Rational(0)));
  std::vector<std::map<Partition, Rational>> down(upper_.size());
  for (std::size_t j = 0; j < upper_.size(); ++j) down[j] = measure_.graph().down_prob(upper_[j]);
  for (std::size_t i = 0; i < k; ++i) {
    for (const auto& [zeta, pu] : measure_.up_prob(states_[i])) {
      for (const auto& [eta, pd] : down[upper->index(zeta)]) p[i][lower->index(eta)] += pu * pd;
    }
  }
  return p;
}

std::vector<Rational> UpDownChain::stationary() const {
  const auto p = transition_matrix();
  const std::size_t k = p.size();
  std::vector<std::vector<Rational>> a(k, std::vector<Rational>(k, Rational(0)));
  std::vector<Rational> b(k, Rational(0));
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t c = 0; c < k; ++c) a[r][c] = p[c][r] - (r == c ? 1 : 0);
  for (std::size_t c = 0; c < k; ++c) a[k - 1][c] = 1;
  b[k - 1] = 1;
  return solve_exact(std::move(a), std::move(b));
}

std::vector<Rational> solve_exact(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) throw ConsistencyError("solve_exact: singular system");
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const Rational f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

}  // namespace zmd
