#include "zmd/symfunc.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>

#include "zmd/errors.hpp"

namespace zmd {

std::string Basis::name() const {
  switch (kind) {
    case BasisKind::Monomial: return "monomial";
    case BasisKind::PowerSum: return "powersum";
    case BasisKind::Schur: return "schur";
    case BasisKind::JackP: return "jackP(" + to_fraction_string(vartheta) + ")";
    case BasisKind::JackPaper: return "jack(" + to_fraction_string(vartheta) + ")";
  }
  return "?";
}

std::string Basis::symbol() const {
  switch (kind) {
    case BasisKind::Monomial: return "m";
    case BasisKind::PowerSum: return "p";
    case BasisKind::Schur: return "s";
    case BasisKind::JackP: return "P";
    case BasisKind::JackPaper: return "J";
  }
  return "?";
}

bool operator==(const Basis& a, const Basis& b) {
  if (a.kind != b.kind) return false;
  if (a.kind == BasisKind::JackP || a.kind == BasisKind::JackPaper) return a.vartheta == b.vartheta;
  return true;
}

GradedSymPoly::GradedSymPoly(int degree, Basis basis, const CoeffMap& coeffs) : degree_(degree), basis_(std::move(basis)) {
  for (const auto& [k, v] : coeffs) add(k, v);
}

GradedSymPoly GradedSymPoly::element(const Partition& lambda, Basis basis) {
  GradedSymPoly f(lambda.size(), std::move(basis));
  f.add(lambda, Rational(1));
  return f;
}

Rational GradedSymPoly::coeff(const Partition& key) const {
  auto it = coeffs_.find(key);
  return it == coeffs_.end() ? Rational(0) : it->second;
}

void GradedSymPoly::add(const Partition& key, const Rational& value) {
  if (key.size() > degree_) throw DomainError("GradedSymPoly: key " + key.to_string() + " exceeds degree");
  if (value == 0) return;
  auto [it, inserted] = coeffs_.try_emplace(key, value);
  if (!inserted) {
    it->second += value;
    if (it->second == 0) coeffs_.erase(it);
  }
}

GradedSymPoly& GradedSymPoly::operator+=(const GradedSymPoly& other) {
  if (!(basis_ == other.basis_)) throw DomainError("GradedSymPoly: basis mismatch");
  degree_ = std::max(degree_, other.degree_);
  for (const auto& [k, v] : other.coeffs_) add(k, v);
  return *this;
}

GradedSymPoly& GradedSymPoly::operator-=(const GradedSymPoly& other) {
  if (!(basis_ == other.basis_)) throw DomainError("GradedSymPoly: basis mismatch");
  degree_ = std::max(degree_, other.degree_);
  for (const auto& [k, v] : other.coeffs_) add(k, -v);
  return *this;
}

GradedSymPoly& GradedSymPoly::operator*=(const Rational& scalar) {
  if (scalar == 0) {
    coeffs_.clear();
    return *this;
  }
  for (auto& [k, v] : coeffs_) v *= scalar;
  return *this;
}

std::map<int, CoeffMap> GradedSymPoly::homogeneous_components() const {
  std::map<int, CoeffMap> out;
  for (const auto& [k, v] : coeffs_) out[k.size()].emplace(k, v);
  return out;
}

namespace {

void accumulate(CoeffMap& target, const Partition& key, const Rational& value) {
  if (value == 0) return;
  auto [it, inserted] = target.try_emplace(key, value);
  if (!inserted) {
    it->second += value;
    if (it->second == 0) target.erase(it);
  }
}

Partition from_sorted_desc(std::vector<int> v) {
  while (!v.empty() && v.back() == 0) v.pop_back();
  return Partition(std::move(v));
}

bool non_increasing(const std::vector<int>& v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] > v[i - 1]) return false;
  return true;
}

// Calls f on every distinct permutation of lambda padded with zeros to n entries.
template <class F>
void for_each_arrangement(const Partition& lambda, int n, F&& f) {
  std::vector<int> a(lambda.parts());
  a.resize(n, 0);
  std::sort(a.begin(), a.end());
  do f(a);
  while (std::next_permutation(a.begin(), a.end()));
}

}  // namespace

CoeffMap multiply_power_sum(int k, const CoeffMap& f) {
  if (k < 1) throw DomainError("multiply_power_sum: k must be positive");
  CoeffMap out;
  for (const auto& [mu, c] : f) {
    std::vector<int> values(mu.parts());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    values.push_back(0);
    for (int u : values) {
      std::vector<int> parts(mu.parts());
      if (u == 0) {
        parts.push_back(k);
      } else {
        *std::find(parts.begin(), parts.end(), u) += k;
      }
      std::sort(parts.begin(), parts.end(), std::greater<>());
      Partition nu(std::move(parts));
      accumulate(out, nu, c * nu.multiplicity(u + k));
    }
  }
  return out;
}

Rational kostka(const Partition& lambda, const Partition& mu) {
  if (lambda.size() != mu.size()) return Rational(0);
  if (!dominates(lambda, mu)) return Rational(0);
  std::map<std::pair<std::vector<int>, int>, mpz_class> memo;
  const auto& content = mu.parts();

  std::function<mpz_class(const std::vector<int>&, int)> count = [&](const std::vector<int>& shape, int k) -> mpz_class {
    if (k == 0) return shape.empty() ? mpz_class(1) : mpz_class(0);
    auto key = std::make_pair(shape, k);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    const int strip = content[k - 1];
    mpz_class total = 0;
    std::vector<int> rho(shape.size());
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int remaining) {
      if (i == shape.size()) {
        if (remaining == 0) {
          std::vector<int> r(rho);
          while (!r.empty() && r.back() == 0) r.pop_back();
          total += count(r, k - 1);
        }
        return;
      }
      const int lo = i + 1 < shape.size() ? shape[i + 1] : 0;
      for (int v = shape[i]; v >= lo; --v) {
        const int removed = shape[i] - v;
        if (removed > remaining) break;
        rho[i] = v;
        rec(i + 1, remaining - removed);
      }
    };
    rec(0, strip);
    memo.emplace(key, total);
    return total;
  };
  return Rational(count(lambda.parts(), mu.length()));
}

CoeffMap laplace_beltrami_on_monomial(const Partition& lambda, int n, const Rational& vartheta) {
  if (lambda.length() > n) throw DomainError("laplace_beltrami_on_monomial: too few variables");
  CoeffMap out;
  Rational diag{0};
  for (int p : lambda.parts()) diag += Rational(p * (p - 1)) / 2;
  accumulate(out, lambda, diag);

  for_each_arrangement(lambda, n, [&](const std::vector<int>& a) {
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const int p = std::max(a[i], a[j]);
        const int q = std::min(a[i], a[j]);
        if (p == q) {
          if (non_increasing(a)) accumulate(out, lambda, vartheta * p);
          continue;
        }
        if (a[i] < a[j]) continue;  // each unordered {a, swap(a)} once
        const int k = p - q;
        std::vector<int> b(a);
        for (int r = 0; r <= k; ++r) {
          b[i] = q + r;
          b[j] = q + k - r;
          if (non_increasing(b)) accumulate(out, from_sorted_desc(b), vartheta * p);
        }
        for (int r = 0; r <= k - 2; ++r) {
          b[i] = q + 1 + r;
          b[j] = q + k - 1 - r;
          if (non_increasing(b)) accumulate(out, from_sorted_desc(b), -vartheta * q);
        }
      }
    }
  });
  return out;
}

Rational laplace_beltrami_eigenvalue(const Partition& lambda, int n, const Rational& vartheta) {
  Rational e{0};
  for (int i = 1; i <= lambda.length(); ++i) {
    const int p = lambda.part(i);
    e += Rational(p * (p - 1)) / 2 + vartheta * p * (n - i);
  }
  return e;
}

double monomial_eval(const Partition& mu, std::span<const double> x) {
  const int n = static_cast<int>(x.size());
  if (mu.length() > n) return 0.0;
  double total = 0.0;
  for_each_arrangement(mu, n, [&](const std::vector<int>& a) {
    double term = 1.0;
    for (int i = 0; i < n; ++i)
      if (a[i] != 0) term *= std::pow(x[i], a[i]);
    total += term;
  });
  return total;
}

double schur_eval(const Partition& eta, std::span<const double> x) {
  const int n = static_cast<int>(x.size());
  if (eta.length() > n) throw DomainError("schur_eval: fewer variables than rows");
  if (n == 0) return 1.0;
  double gap = INFINITY;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) gap = std::min(gap, std::abs(x[i] - x[j]));
  if (gap < 1e-9) {
    double total = 0.0;
    for (const Partition& mu : enumerate_partitions(eta.size())) {
      if (!dominates(eta, mu)) continue;
      total += to_double(kostka(eta, mu)) * monomial_eval(mu, x);
    }
    return total;
  }
  Eigen::MatrixXd num(n, n), den(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      num(i, j) = std::pow(x[i], eta.part(j + 1) + n - 1 - j);
      den(i, j) = std::pow(x[i], n - 1 - j);
    }
  }
  return num.partialPivLu().determinant() / den.partialPivLu().determinant();
}

struct SymmetricAlgebra::PieriState {
  int built_level = 1;
  PieriReport report;
};

SymmetricAlgebra::SymmetricAlgebra(SymConfig config) : config_(config) {
  if (config_.max_degree < 1 || config_.max_jack_degree < 1) throw ParameterError("SymConfig: caps must be positive");
}

SymmetricAlgebra::~SymmetricAlgebra() = default;

SymmetricAlgebra& SymmetricAlgebra::shared() {
  static SymmetricAlgebra instance;
  return instance;
}

void SymmetricAlgebra::check_degree(int d, int cap, const char* what) const {
  if (d > cap) throw CapacityError(std::string(what) + ": degree " + std::to_string(d) + " exceeds cap " + std::to_string(cap));
}

const CoeffMap& SymmetricAlgebra::power_sum_row(const Partition& lambda) const {
  std::lock_guard lock(mu_);
  if (auto it = power_rows_.find(lambda); it != power_rows_.end()) return it->second;
  check_degree(lambda.size(), config_.max_degree, "power sum");
  CoeffMap row{{Partition{}, Rational(1)}};
  for (int k : lambda.parts()) row = multiply_power_sum(k, row);
  return power_rows_.emplace(lambda, std::move(row)).first->second;
}

const CoeffMap& SymmetricAlgebra::schur_row(const Partition& lambda) const {
  std::lock_guard lock(mu_);
  if (auto it = schur_rows_.find(lambda); it != schur_rows_.end()) return it->second;
  check_degree(lambda.size(), config_.max_degree, "schur");
  CoeffMap row;
  for (const Partition& mu : enumerate_partitions(lambda.size()))
    if (dominates(lambda, mu)) accumulate(row, mu, kostka(lambda, mu));
  return schur_rows_.emplace(lambda, std::move(row)).first->second;
}

const CoeffMap& SymmetricAlgebra::jack_row(const Partition& lambda, const Rational& vartheta) const {
  if (vartheta <= 0) throw DomainError("Jack parameter must be positive");
  const int d = lambda.size();
  std::lock_guard lock(mu_);
  auto key = std::make_pair(vartheta, d);
  if (auto it = jack_levels_.find(key); it != jack_levels_.end()) return it->second.at(lambda);
  check_degree(d, config_.max_jack_degree, "jack");

  std::map<Partition, CoeffMap> level;
  if (d == 0) {
    level[Partition{}] = {{Partition{}, Rational(1)}};
    return jack_levels_.emplace(key, std::move(level)).first->second.at(lambda);
  }
  const std::vector<Partition> parts = enumerate_partitions(d);  // lex-descending
  std::map<Partition, CoeffMap> op;
  std::map<Partition, Rational> eig;
  for (const Partition& mu : parts) {
    op[mu] = laplace_beltrami_on_monomial(mu, d, vartheta);
    eig[mu] = laplace_beltrami_eigenvalue(mu, d, vartheta);
    auto diag = op[mu].find(mu);
    if ((diag == op[mu].end() ? Rational(0) : diag->second) != eig[mu])
      throw ConsistencyError("Laplace-Beltrami diagonal disagrees with eigenvalue at " + mu.to_string());
  }
  for (const Partition& lam : parts) {
    CoeffMap c{{lam, Rational(1)}};
    const Rational& e = eig[lam];
    for (const Partition& nu : parts) {
      if (!(nu < lam) || !dominates(lam, nu)) continue;
      Rational rhs{0};
      for (const auto& [mu, cm] : c) {
        auto it = op[mu].find(nu);
        if (it != op[mu].end()) rhs += cm * it->second;
      }
      if (rhs == 0) continue;
      const Rational gap = e - eig[nu];
      if (gap == 0)
        throw ConsistencyError("Jack back-substitution: eigenvalue collision between " + lam.to_string() + " and " + nu.to_string());
      c.emplace(nu, rhs / gap);
    }
    level.emplace(lam, std::move(c));
  }
  return jack_levels_.emplace(key, std::move(level)).first->second.at(lambda);
}

CoeffMap SymmetricAlgebra::monomial_expansion(const Partition& lambda, const Basis& basis) const {
  switch (basis.kind) {
    case BasisKind::Monomial:
      check_degree(lambda.size(), config_.max_degree, "monomial");
      return {{lambda, Rational(1)}};
    case BasisKind::PowerSum: return power_sum_row(lambda);
    case BasisKind::Schur: return schur_row(lambda);
    case BasisKind::JackP: return jack_row(lambda, basis.vartheta);
    case BasisKind::JackPaper: {
      std::lock_guard lock(mu_);
      const Rational s = pieri_state(basis.vartheta, lambda.size()).report.scalars.at(lambda);
      CoeffMap out = jack_row(lambda, basis.vartheta);
      for (auto& [k, v] : out) v *= s;
      return out;
    }
  }
  return {};
}

CoeffMap SymmetricAlgebra::from_monomials(const CoeffMap& f, const Basis& target) const {
  if (target.kind == BasisKind::Monomial) return f;
  std::map<int, CoeffMap> by_size;
  for (const auto& [k, v] : f) by_size[k.size()].emplace(k, v);
  CoeffMap out;
  for (auto& [size, g] : by_size) {
    while (!g.empty()) {
      if (target.kind == BasisKind::PowerSum) {
        const Partition key = g.begin()->first;
        const CoeffMap& row = power_sum_row(key);
        const Rational c = g.begin()->second / row.at(key);
        for (const auto& [k, v] : row) accumulate(g, k, -c * v);
        accumulate(out, key, c);
      } else {
        const Partition key = g.rbegin()->first;
        const Rational c = g.rbegin()->second;
        const CoeffMap& row = target.kind == BasisKind::Schur ? schur_row(key) : jack_row(key, target.vartheta);
        for (const auto& [k, v] : row) accumulate(g, k, -c * v);
        accumulate(out, key, c);
      }
    }
  }
  if (target.kind == BasisKind::JackPaper) {
    int top = 0;
    for (const auto& [k, v] : out) top = std::max(top, k.size());
    std::lock_guard lock(mu_);
    const PieriState& st = pieri_state(target.vartheta, top);
    for (auto& [k, v] : out) v /= st.report.scalars.at(k);
  }
  return out;
}

GradedSymPoly SymmetricAlgebra::convert(const GradedSymPoly& f, const Basis& target) const {
  check_degree(f.degree(), config_.max_degree, "convert");
  if (f.basis() == target) return f;
  CoeffMap m;
  for (const auto& [k, v] : f.coeffs())
    for (const auto& [mk, mv] : monomial_expansion(k, f.basis())) accumulate(m, mk, v * mv);
  return GradedSymPoly(f.degree(), target, from_monomials(m, target));
}

GradedSymPoly SymmetricAlgebra::jack_in_monomials(const Partition& eta, const Rational& vartheta) const {
  return GradedSymPoly(eta.size(), Basis::monomial(), jack_row(eta, vartheta));
}

SymmetricAlgebra::PieriState& SymmetricAlgebra::pieri_state(const Rational& vartheta, int max_level) const {
  std::lock_guard lock(mu_);
  auto& slot = pieri_[vartheta];
  if (!slot) {
    slot = std::make_unique<PieriState>();
    slot->report.vartheta = vartheta;
    slot->report.scalars[Partition{}] = 1;
    slot->report.scalars[Partition{1}] = 1;
    slot->report.max_level = 1;
  }
  PieriState& st = *slot;
  if (max_level <= st.built_level) return st;
  check_degree(max_level, config_.max_jack_degree, "jack pieri");
  const GraphKind kind = GraphKind::jack(vartheta);
  const Basis target = Basis::jack_p(vartheta);
  for (int k = st.built_level; k < max_level; ++k) {
    for (const Partition& eta : enumerate_partitions(k)) {
      const Rational ceta = st.report.scalars.at(eta);
      CoeffMap product = multiply_power_sum(1, jack_row(eta, vartheta));
      CoeffMap psi = from_monomials(product, target);
      for (const auto& [nu, coeff] : psi) {
        if (!added_box(eta, nu)) {
          st.report.inconsistencies.push_back("p1*P_" + eta.to_string() + " has a term on non-cover " + nu.to_string());
          continue;
        }
        const Rational candidate = ceta * coeff / edge_weight(kind, eta, nu);
        ++st.report.parent_checks;
        auto [it, inserted] = st.report.scalars.try_emplace(nu, candidate);
        if (!inserted && it->second != candidate) {
          st.report.inconsistencies.push_back("scalar for " + nu.to_string() + " via parent " + eta.to_string() + " is " +
                                              to_fraction_string(candidate) + ", earlier " + to_fraction_string(it->second));
        }
      }
      for (const Cover& c : covers(eta)) {
        if (!psi.count(c.partition))
          st.report.inconsistencies.push_back("p1*P_" + eta.to_string() + " misses cover " + c.partition.to_string());
      }
    }
    st.built_level = k + 1;
    st.report.max_level = k + 1;
  }
  return st;
}

PieriReport SymmetricAlgebra::pieri_report(const Rational& vartheta, int max_level) const {
  std::lock_guard lock(mu_);
  PieriReport r = pieri_state(vartheta, max_level).report;
  return r;
}

GradedSymPoly SymmetricAlgebra::jack_paper(const Partition& eta, const Rational& vartheta) const {
  return GradedSymPoly(eta.size(), Basis::monomial(), monomial_expansion(eta, Basis::jack_paper(vartheta)));
}

Rational SymmetricAlgebra::specialize_exact(const GradedSymPoly& f, const ThomaPoint& omega, const Rational& vartheta) const {
  const GradedSymPoly p = convert(f, Basis::power_sum());
  std::map<int, Rational> pk;
  Rational total{0};
  for (const auto& [lambda, c] : p.coeffs()) {
    Rational term = c;
    for (int k : lambda.parts()) {
      auto it = pk.find(k);
      if (it == pk.end()) it = pk.emplace(k, omega.power_sum(k, vartheta)).first;
      term *= it->second;
    }
    total += term;
  }
  return total;
}

double SymmetricAlgebra::specialize(const GradedSymPoly& f, const ThomaPoint& omega, const Rational& vartheta) const {
  const GradedSymPoly p = convert(f, Basis::power_sum());
  const double th = to_double(vartheta);
  std::map<int, double> pk;
  double total = 0.0;
  for (const auto& [lambda, c] : p.coeffs()) {
    double term = to_double(c);
    for (int k : lambda.parts()) {
      auto it = pk.find(k);
      if (it == pk.end()) it = pk.emplace(k, omega.power_sum_double(k, th)).first;
      term *= it->second;
    }
    total += term;
  }
  return total;
}

std::shared_ptr<const BranchingGraph> SymmetricAlgebra::jack_graph(const Rational& vartheta) const {
  std::lock_guard lock(mu_);
  auto& g = graphs_[vartheta];
  if (!g) g = std::make_shared<const BranchingGraph>(GraphKind::jack(vartheta));
  return g;
}

CoeffMap SymmetricAlgebra::j_in_power_sums(const Partition& eta, const Rational& vartheta) const {
  std::lock_guard lock(mu_);
  auto key = std::make_pair(vartheta, eta);
  if (auto it = j_power_cache_.find(key); it != j_power_cache_.end()) return it->second;
  GradedSymPoly j = GradedSymPoly::element(eta, Basis::jack_paper(vartheta));
  GradedSymPoly p = convert(j, Basis::power_sum());
  p *= jack_graph(vartheta)->dim(eta);
  return j_power_cache_.emplace(key, p.coeffs()).first->second;
}

Rational SymmetricAlgebra::j_eval_exact(const Partition& eta, const ThomaPoint& omega, const Rational& vartheta) const {
  Rational total{0};
  for (const auto& [lambda, c] : j_in_power_sums(eta, vartheta)) {
    Rational term = c;
    for (int k : lambda.parts()) term *= omega.power_sum(k, vartheta);
    total += term;
  }
  return total;
}

double SymmetricAlgebra::j_eval(const Partition& eta, const ThomaPoint& omega, const Rational& vartheta) const {
  const double th = to_double(vartheta);
  double total = 0.0;
  for (const auto& [lambda, c] : j_in_power_sums(eta, vartheta)) {
    double term = to_double(c);
    for (int k : lambda.parts()) term *= omega.power_sum_double(k, th);
    total += term;
  }
  return total;
}

JLevelEvaluator::JLevelEvaluator(const SymmetricAlgebra& algebra, int n, const Rational& vartheta)
    : n_(n), vartheta_(vartheta), partitions_(enumerate_partitions(n)) {
  for (const Partition& eta : partitions_) {
    std::vector<std::pair<Partition, Rational>> ex;
    std::vector<std::pair<std::vector<int>, double>> dbl;
    for (const auto& [lambda, c] : algebra.j_in_power_sums(eta, vartheta)) {
      ex.emplace_back(lambda, c);
      dbl.emplace_back(lambda.parts(), to_double(c));
    }
    exact_terms_.push_back(std::move(ex));
    terms_.push_back(std::move(dbl));
  }
}

std::vector<double> JLevelEvaluator::evaluate(const ThomaPoint& omega) const {
  const double th = to_double(vartheta_);
  std::vector<double> pk(n_ + 1, 1.0);
  for (int k = 2; k <= n_; ++k) pk[k] = omega.power_sum_double(k, th);
  std::vector<double> out;
  out.reserve(terms_.size());
  for (const auto& terms : terms_) {
    double total = 0.0;
    for (const auto& [parts, c] : terms) {
      double term = c;
      for (int k : parts) term *= pk[k];
      total += term;
    }
    out.push_back(total);
  }
  return out;
}

std::vector<Rational> JLevelEvaluator::evaluate_exact(const ThomaPoint& omega) const {
  std::vector<Rational> pk(n_ + 1, Rational(1));
  for (int k = 2; k <= n_; ++k) pk[k] = omega.power_sum(k, vartheta_);
  std::vector<Rational> out;
  for (const auto& terms : exact_terms_) {
    Rational total{0};
    for (const auto& [lambda, c] : terms) {
      Rational term = c;
      for (int k : lambda.parts()) term *= pk[k];
      total += term;
    }
    out.push_back(total);
  }
  return out;
}

}  // namespace zmd
