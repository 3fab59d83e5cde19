#include "zmd/thoma.hpp"

#include <cmath>
#include <sstream>

#include "zmd/errors.hpp"

namespace zmd {
namespace {

void check_coordinates(const std::vector<Rational>& xs, const char* name) {
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i] < 0 || xs[i] > 1) throw DomainError(std::string("Thoma coordinate out of [0,1] in ") + name);
    if (i > 0 && xs[i] > xs[i - 1]) throw DomainError(std::string("Thoma coordinates must be non-increasing in ") + name);
  }
}

std::vector<Rational> parse_list(const std::string& body) {
  std::vector<Rational> out;
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    out.push_back(parse_rational(item));
  }
  return out;
}

}  // namespace

ThomaPoint::ThomaPoint(std::vector<Rational> alpha, std::vector<Rational> beta)
    : alpha_(std::move(alpha)), beta_(std::move(beta)) {
  while (!alpha_.empty() && alpha_.back() == 0) alpha_.pop_back();
  while (!beta_.empty() && beta_.back() == 0) beta_.pop_back();
  check_coordinates(alpha_, "alpha");
  check_coordinates(beta_, "beta");
  if (gamma() < 0) throw DomainError("Thoma point has total mass above 1");
}

ThomaPoint ThomaPoint::parse(std::string_view text) {
  std::vector<Rational> alpha;
  std::vector<Rational> beta;
  std::stringstream ss{std::string(text)};
  std::string section;
  while (std::getline(ss, section, ';')) {
    auto start = section.find_first_not_of(" \t");
    if (start == std::string::npos) continue;
    section = section.substr(start);
    auto eq = section.find('=');
    if (eq == std::string::npos) throw DomainError("Thoma point section needs 'a=' or 'b=': " + section);
    std::string key = section.substr(0, eq);
    std::string body = section.substr(eq + 1);
    if (key == "a" || key == "alpha") {
      alpha = parse_list(body);
    } else if (key == "b" || key == "beta") {
      beta = parse_list(body);
    } else {
      throw DomainError("unknown Thoma point section '" + key + "'");
    }
  }
  return ThomaPoint(std::move(alpha), std::move(beta));
}

Rational ThomaPoint::gamma() const {
  Rational g{1};
  for (const auto& a : alpha_) g -= a;
  for (const auto& b : beta_) g -= b;
  return g;
}

Rational ThomaPoint::power_sum(int k, const Rational& vartheta) const {
  if (k == 1) return Rational(1);
  Rational sa{0};
  Rational sb{0};
  for (const auto& a : alpha_) sa += pow(a, static_cast<unsigned>(k));
  for (const auto& b : beta_) sb += pow(b, static_cast<unsigned>(k));
  Rational sign_scale = pow(Rational(-vartheta), static_cast<unsigned>(k - 1));
  return sa + sign_scale * sb;
}

double ThomaPoint::power_sum_double(int k, double vartheta) const {
  if (k == 1) return 1.0;
  double sa = 0.0;
  double sb = 0.0;
  for (const auto& a : alpha_) sa += std::pow(to_double(a), k);
  for (const auto& b : beta_) sb += std::pow(to_double(b), k);
  return sa + std::pow(-vartheta, k - 1) * sb;
}

std::string ThomaPoint::to_string() const {
  std::string out = "a=";
  for (std::size_t i = 0; i < alpha_.size(); ++i) out += (i ? "," : "") + to_fraction_string(alpha_[i]);
  out += ";b=";
  for (std::size_t i = 0; i < beta_.size(); ++i) out += (i ? "," : "") + to_fraction_string(beta_[i]);
  return out;
}

ThomaPoint scaled_frobenius(const Partition& eta) {
  if (eta.empty()) throw DomainError("scaled_frobenius: empty partition has no scaling");
  FrobeniusCoords f = frobenius(eta);
  const Rational n(eta.size());
  for (auto& a : f.a) a /= n;
  for (auto& b : f.b) b /= n;
  return ThomaPoint(std::move(f.a), std::move(f.b));
}

}  // namespace zmd
