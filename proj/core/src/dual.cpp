#include "zmd/dual.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "zmd/errors.hpp"
#include "zmd/parallel.hpp"

namespace zmd {

namespace {

Partition phi_key(std::vector<int> indices) {
  indices.erase(std::remove(indices.begin(), indices.end(), 1), indices.end());
  for (int k : indices)
    if (k < 1) throw DomainError("phi index must be positive");
  std::sort(indices.begin(), indices.end(), std::greater<>());
  return Partition(std::move(indices));
}

std::vector<int> without(const Partition& mu, std::initializer_list<int> drop) {
  std::vector<int> parts(mu.parts());
  for (int d : drop) parts.erase(std::find(parts.begin(), parts.end(), d));
  return parts;
}

std::vector<int> with(std::vector<int> parts, std::initializer_list<int> extra) {
  parts.insert(parts.end(), extra);
  return parts;
}

std::set<int> distinct(const Partition& mu) { return {mu.parts().begin(), mu.parts().end()}; }

const BranchingGraph& young() {
  static const BranchingGraph graph(GraphKind::jack(Rational(1)));
  return graph;
}

}  // namespace

PhiPoly PhiPoly::constant(const Rational& c) {
  PhiPoly p;
  p.add(Partition{}, c);
  return p;
}

PhiPoly PhiPoly::phi(int k) { return monomial({k}); }

PhiPoly PhiPoly::monomial(const std::vector<int>& indices, const Rational& c) {
  PhiPoly p;
  p.add(phi_key(indices), c);
  return p;
}

int PhiPoly::degree() const {
  int d = 0;
  for (const auto& [k, v] : terms_) d = std::max(d, k.size());
  return d;
}

Rational PhiPoly::coeff(const Partition& key) const {
  auto it = terms_.find(key);
  return it == terms_.end() ? Rational(0) : it->second;
}

void PhiPoly::add(const Partition& key, const Rational& c) {
  if (c == 0) return;
  for (int k : key.parts())
    if (k < 2) throw DomainError("PhiPoly keys use indices >= 2");
  auto [it, inserted] = terms_.try_emplace(key, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

PhiPoly& PhiPoly::operator+=(const PhiPoly& o) {
  for (const auto& [k, v] : o.terms_) add(k, v);
  return *this;
}

PhiPoly& PhiPoly::operator-=(const PhiPoly& o) {
  for (const auto& [k, v] : o.terms_) add(k, -v);
  return *this;
}

PhiPoly& PhiPoly::operator*=(const Rational& c) {
  if (c == 0) terms_.clear();
  for (auto& [k, v] : terms_) v *= c;
  return *this;
}

PhiPoly operator*(const PhiPoly& a, const PhiPoly& b) {
  PhiPoly out;
  for (const auto& [ka, va] : a.terms_) {
    for (const auto& [kb, vb] : b.terms_) {
      std::vector<int> parts(ka.parts());
      parts.insert(parts.end(), kb.parts().begin(), kb.parts().end());
      out.add(phi_key(std::move(parts)), va * vb);
    }
  }
  return out;
}

PhiPoly PhiPoly::derivative(int k) const {
  PhiPoly out;
  for (const auto& [key, v] : terms_) {
    const int mult = key.multiplicity(k);
    if (mult > 0) out.add(phi_key(without(key, {k})), v * mult);
  }
  return out;
}

double PhiPoly::evaluate(const ThomaPoint& omega, double vartheta) const {
  double total = 0.0;
  for (const auto& [key, v] : terms_) {
    double term = to_double(v);
    for (int k : key.parts()) term *= omega.power_sum_double(k, vartheta);
    total += term;
  }
  return total;
}

Rational PhiPoly::evaluate_exact(const ThomaPoint& omega, const Rational& vartheta) const {
  Rational total{0};
  for (const auto& [key, v] : terms_) {
    Rational term = v;
    for (int k : key.parts()) term *= omega.power_sum(k, vartheta);
    total += term;
  }
  return total;
}

std::string PhiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    if (!first) os << " + ";
    first = false;
    os << to_fraction_string(it->second);
    for (int k : it->first.parts()) os << "*phi" << k;
  }
  return os.str();
}

PhiPoly generator_A_apply(const PhiPoly& f, const GeneratorParams& params) {
  const Rational& th = params.vartheta;
  PhiPoly out;
  for (const auto& [mu, c] : f.terms()) {
    const std::set<int> values = distinct(mu);
    // second-order part
    for (int i : values) {
      for (int j : values) {
        Rational d;
        std::vector<int> rest;
        if (i != j) {
          d = c * mu.multiplicity(i) * mu.multiplicity(j);
          rest = without(mu, {i, j});
        } else {
          const int mi = mu.multiplicity(i);
          if (mi < 2) continue;
          d = c * mi * (mi - 1);
          rest = without(mu, {i, i});
        }
        const Rational w = d * Rational(i * j) / 2;
        out += PhiPoly::monomial(with(rest, {i + j - 1}), w);
        out += PhiPoly::monomial(with(rest, {i, j}), -w);
      }
    }
    for (int k : values) {
      const Rational d = c * mu.multiplicity(k);
      const std::vector<int> rest = without(mu, {k});
      // vartheta/2 sum_{i+j+1=k} (i+j+1) phi_i phi_j d/dphi_k
      for (int i = 1; i <= k - 2; ++i) {
        const int j = k - 1 - i;
        out += PhiPoly::monomial(with(rest, {i, j}), d * th * Rational(k) / 2);
      }
      // drift
      const Rational lower = ((1 - th) * (k * (k - 1)) + params.zsum * k) / 2;
      const Rational diag = -(Rational(k * (k - 1)) + params.theta * k) / 2;
      out += PhiPoly::monomial(with(rest, {k - 1}), d * lower);
      out += PhiPoly::monomial(with(rest, {k}), d * diag);
    }
  }
  return out;
}

PhiPoly carre_du_champ(const PhiPoly& f, const PhiPoly& g) {
  std::set<int> fi, gi;
  for (const auto& [k, v] : f.terms()) fi.insert(k.parts().begin(), k.parts().end());
  for (const auto& [k, v] : g.terms()) gi.insert(k.parts().begin(), k.parts().end());
  PhiPoly out;
  for (int i : fi) {
    const PhiPoly df = f.derivative(i);
    for (int j : gi) {
      const PhiPoly dg = g.derivative(j);
      PhiPoly factor = PhiPoly::phi(i + j - 1) - PhiPoly::monomial({i, j});
      out += factor * (df * dg) * Rational(i * j);
    }
  }
  return out;
}

PhiPoly phi_image(const CoeffMap& power_sum_coeffs) {
  PhiPoly out;
  for (const auto& [lambda, c] : power_sum_coeffs) out += PhiPoly::monomial(lambda.parts(), c);
  return out;
}

SpectrumReport spectrum_check(int max_degree, const GeneratorParams& params, double tol) {
  if (max_degree < 0 || max_degree > 7) throw CapacityError("spectrum_check supports weighted degree <= 7");
  SpectrumReport rep;
  rep.max_degree = max_degree;
  rep.theta = to_double(params.theta);
  std::vector<Partition> basis;
  for (int m = 0; m <= max_degree; ++m) {
    int count = 0;
    for (const Partition& p : enumerate_partitions(m)) {
      if (p.multiplicity(1) == 0) {
        basis.push_back(p);
        ++count;
      }
    }
    if (count > 0) rep.expected_multiplicity[m] = count;
  }
  std::map<Partition, std::size_t> index;
  for (std::size_t i = 0; i < basis.size(); ++i) index[basis[i]] = i;
  const std::size_t dim = basis.size();
  rep.dimension = dim;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(dim, dim);
  for (std::size_t col = 0; col < dim; ++col) {
    PhiPoly img = generator_A_apply(PhiPoly::monomial(basis[col].parts()), params);
    for (const auto& [k, v] : img.terms()) {
      auto it = index.find(k);
      if (it == index.end()) {
        rep.problems.push_back("image of " + basis[col].to_string() + " leaves the degree range");
        continue;
      }
      a(it->second, col) = to_double(v);
    }
  }
  Eigen::EigenSolver<Eigen::MatrixXd> solver(a, false);
  auto ev = solver.eigenvalues();
  std::vector<std::pair<double, double>> found;
  for (Eigen::Index i = 0; i < ev.size(); ++i) found.emplace_back(ev[i].real(), ev[i].imag());
  std::sort(found.begin(), found.end(), [](auto x, auto y) { return x.first > y.first; });
  for (auto [re, im] : found) {
    rep.eigen_real.push_back(re);
    rep.eigen_imag.push_back(im);
  }
  for (auto [m, count] : rep.expected_multiplicity)
    for (int c = 0; c < count; ++c) rep.expected.push_back(-lambda(m, rep.theta));
  std::sort(rep.expected.begin(), rep.expected.end(), std::greater<>());
  for (std::size_t i = 0; i < found.size(); ++i) {
    int best = -1;
    double gap = INFINITY;
    for (auto [m, count] : rep.expected_multiplicity) {
      const double g = std::abs(found[i].first + lambda(m, rep.theta));
      if (g < gap) {
        gap = g;
        best = m;
      }
    }
    rep.found_multiplicity[best] += 1;
    const double dev = std::max(std::abs(found[i].first - rep.expected[i]), std::abs(found[i].second));
    rep.max_deviation = std::max(rep.max_deviation, dev);
  }
  if (rep.max_deviation > tol) rep.problems.push_back("eigenvalue deviation " + std::to_string(rep.max_deviation) + " above tolerance");
  if (rep.found_multiplicity != rep.expected_multiplicity) rep.problems.push_back("multiplicities differ from p(m) - p(m-1)");
  rep.ok = rep.problems.empty();
  return rep;
}

DualityResidual duality_residual(const Partition& eta, const ZParams& params, const SymmetricAlgebra& algebra) {
  if (params.vartheta != 1) throw ParameterError("duality_residual is defined for vartheta = 1 only");
  auto schur_phi = [&](const Partition& p) {
    return phi_image(algebra.convert(GradedSymPoly::element(p, Basis::schur()), Basis::power_sum()).coeffs());
  };
  DualityResidual r;
  r.eta = eta;
  const PhiPoly s = schur_phi(eta);
  r.lhs = generator_A_apply(s, GeneratorParams::from(params));
  const int n = eta.size();
  const Rational lam = Rational(n) * (Rational(n - 1) + params.theta) / 2;
  r.rhs = s * (-lam);
  const GaussianRational top = z_pochhammer(params.z, eta, params.vartheta) * z_pochhammer(params.zprime, eta, params.vartheta);
  for (const Cover& c : cocovers(eta)) {
    const GaussianRational bottom =
        z_pochhammer(params.z, c.partition, params.vartheta) * z_pochhammer(params.zprime, c.partition, params.vartheta);
    const GaussianRational ratio = top / bottom;
    if (!ratio.is_real()) throw ConsistencyError("Pochhammer ratio is not real");
    r.rhs += schur_phi(c.partition) * (ratio.re / 2);
  }
  r.residual = r.lhs - r.rhs;
  return r;
}

double dual_transition_prob(const Partition& nu, const Partition& eta, double t, double theta, LevelOneConvention convention) {
  if (!nu.contains(eta)) throw DomainError("dual_transition_prob: " + eta.to_string() + " is not inside " + nu.to_string());
  if (eta.size() < 1) throw DomainError("dual_transition_prob: target must be nonempty");
  const int m = nu.size();
  const int n = eta.size();
  double coeff;
  if (n == 1 && convention == LevelOneConvention::Absorbing) {
    coeff = 1.0;
    for (int k = 2; k <= m; ++k) coeff -= d_mn(t, m, k, theta).value;
  } else {
    coeff = d_mn(t, m, n, theta).value;
  }
  return coeff * to_double(young().kernel_H(eta, nu));
}

std::map<Partition, double> dual_law(const Partition& nu, double t, double theta, LevelOneConvention convention) {
  if (nu.size() < 1) throw DomainError("dual_law: start must be nonempty");
  const CoeffTable table = d_mn_table(t, nu.size(), theta);
  std::vector<double> level(table.values);
  if (convention == LevelOneConvention::Absorbing) level[1] += level[0];
  const auto rel = young().relative_dims_to(nu);
  const Rational dnu = young().dim(nu);
  std::map<Partition, double> out;
  for (const auto& [eta, r] : rel) {
    if (eta.size() < 1) continue;
    out[eta] = level[eta.size()] * to_double(young().dim(eta) * r / dnu);
  }
  return out;
}

DualSimulator::DualSimulator(double theta) : theta_(theta), young_(GraphKind::jack(Rational(1))) {
  if (theta <= 0) throw DomainError("theta must be positive");
}

const std::vector<std::pair<Partition, double>>& DualSimulator::down_cdf(const Partition& zeta) const {
  std::lock_guard lock(mu_);
  auto it = cdf_.find(zeta);
  if (it != cdf_.end()) return it->second;
  std::vector<std::pair<Partition, double>> cdf;
  double acc = 0.0;
  for (const auto& [eta, p] : young_.down_prob(zeta)) {
    acc += to_double(p);
    cdf.emplace_back(eta, acc);
  }
  return cdf_.emplace(zeta, std::move(cdf)).first->second;
}

DualState DualSimulator::run(const Partition& start, double t, CounterRng& rng) const {
  if (start.size() < 1) throw DomainError("dual process needs a nonempty start");
  DualState s{start, 0.0, start.size() == 1, 0};
  double clock = 0.0;
  while (s.current.size() >= 2) {
    clock += rng.exponential(lambda(s.current.size(), theta_));
    if (clock > t) break;
    const auto& cdf = down_cdf(s.current);
    const double u = rng.uniform() * cdf.back().second;
    const Partition* next = &cdf.back().first;
    for (const auto& [eta, c] : cdf) {
      if (u < c) {
        next = &eta;
        break;
      }
    }
    s.current = *next;
    ++s.jumps;
  }
  s.time = t;
  s.absorbed = s.current.size() == 1;
  return s;
}

std::map<Partition, double> DualSimulator::empirical_law(const Partition& start, double t, std::uint64_t paths, std::uint64_t seed) const {
  std::vector<Partition> ends(paths);
  parallel_for(paths, [&](std::size_t i) {
    CounterRng rng(seed, i);
    ends[i] = run(start, t, rng).current;
  });
  std::map<Partition, double> law;
  for (const auto& p : ends) law[p] += 1.0;
  for (auto& [k, v] : law) v /= static_cast<double>(paths);
  return law;
}

double expected_j_given_start(const Partition& eta, const ThomaPoint& omega, double t, const ZMeasure& measure,
                              LevelOneConvention convention, const SymmetricAlgebra& algebra) {
  const ZParams& p = measure.params();
  if (p.vartheta != 1) throw ParameterError("expected_j_given_start is defined for vartheta = 1 only");
  const int m = eta.size();
  if (m == 0) return 1.0;
  const double ej = measure.mass(eta);
  if (ej == 0) throw ParameterError("zero stationary mass at " + eta.to_string());
  const CoeffTable table = d_mn_table(t, m, p.theta_d());
  double bracket = table.values[1] + (convention == LevelOneConvention::Absorbing ? table.values[0] : 0.0);
  const auto rel = young().relative_dims_to(eta);
  const Rational deta = young().dim(eta);
  for (int n = 2; n <= m; ++n) {
    double inner = 0.0;
    for (const auto& [zeta, r] : rel) {
      if (zeta.size() != n) continue;
      const double mz = measure.mass(zeta);
      if (mz == 0) throw ParameterError("zero stationary mass at " + zeta.to_string());
      const double h = to_double(young().dim(zeta) * r / deta);
      inner += h * algebra.j_eval(zeta, omega, Rational(1)) / mz;
    }
    bracket += table.values[n] * inner;
  }
  return ej * bracket;
}

}  // namespace zmd
