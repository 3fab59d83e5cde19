#include "zmd/partition.hpp"

#include <algorithm>
#include <charconv>
#include <cctype>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

#include "zmd/errors.hpp"

namespace zmd {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i] <= 0) throw DomainError("partition parts must be positive");
    if (i > 0 && parts_[i] > parts_[i - 1]) throw DomainError("partition parts must be non-increasing");
  }
  size_ = std::accumulate(parts_.begin(), parts_.end(), 0);
}

Partition Partition::parse(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c) || c == '(' || c == ')'; }),
          s.end());
  if (s.empty() || s == "0" || s == "\xE2\x88\x85") return Partition{};
  std::vector<int> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw DomainError("malformed partition '" + std::string(text) + "'");
    int v = 0;
    const auto [end, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc() || end != item.data() + item.size())
      throw DomainError("malformed partition '" + std::string(text) + "'");
    parts.push_back(v);
  }
  return Partition(std::move(parts));
}

Partition Partition::conjugate() const {
  std::vector<int> conj(empty() ? 0 : parts_.front(), 0);
  for (int p : parts_)
    for (int j = 0; j < p; ++j) ++conj[j];
  return Partition(std::move(conj));
}

int Partition::multiplicity(int value) const {
  return static_cast<int>(std::count(parts_.begin(), parts_.end(), value));
}

bool Partition::contains(const Partition& inner) const {
  if (inner.length() > length()) return false;
  for (int i = 1; i <= inner.length(); ++i)
    if (inner.part(i) > part(i)) return false;
  return true;
}

std::vector<Box> Partition::boxes() const {
  std::vector<Box> out;
  out.reserve(size_);
  for (int i = 1; i <= length(); ++i)
    for (int j = 1; j <= part(i); ++j) out.push_back({i, j});
  return out;
}

int Partition::diagonal_length() const {
  int r = 0;
  while (r < length() && parts_[r] >= r + 1) ++r;
  return r;
}

long Partition::content_sum() const {
  long total = 0;
  for (const Box& b : boxes()) total += (b.col - 1) - (b.row - 1);
  return total;
}

std::string Partition::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) out.push_back(',');
    out += std::to_string(parts_[i]);
  }
  return out;
}

std::size_t PartitionHash::operator()(const Partition& p) const noexcept {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (int v : p.parts()) {
    h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

std::vector<Partition> enumerate_partitions(int n) {
  if (n < 0) throw DomainError("enumerate_partitions: n must be non-negative");
  std::vector<Partition> out;
  if (n == 0) {
    out.emplace_back();
    return out;
  }
  std::vector<int> a{n};
  while (true) {
    out.emplace_back(a);
    // rightmost part greater than one
    int k = static_cast<int>(a.size()) - 1;
    while (k >= 0 && a[k] == 1) --k;
    if (k < 0) break;
    int freed = static_cast<int>(a.size()) - k;  // ones after position k plus one unit
    int v = --a[k];
    a.resize(k + 1);
    while (freed > 0) {
      int take = std::min(v, freed);
      a.push_back(take);
      freed -= take;
    }
  }
  return out;
}

std::int64_t partition_count(int n) {
  if (n < 0) return 0;
  std::vector<std::int64_t> p(n + 1, 0);
  p[0] = 1;
  for (int part = 1; part <= n; ++part)
    for (int s = part; s <= n; ++s) p[s] += p[s - part];
  return p[n];
}

bool dominates(const Partition& a, const Partition& b) {
  if (a.size() != b.size()) return false;
  int sa = 0;
  int sb = 0;
  int len = std::max(a.length(), b.length());
  for (int i = 1; i <= len; ++i) {
    sa += a.part(i);
    sb += b.part(i);
    if (sa < sb) return false;
  }
  return true;
}

std::pair<int, int> arm_leg(const Partition& eta, Box b) {
  if (!eta.contains(b)) {
    throw DomainError("arm_leg: box (" + std::to_string(b.row) + "," + std::to_string(b.col) +
                      ") outside diagram " + eta.to_string());
  }
  int leg = 0;
  while (eta.part(b.row + leg + 1) >= b.col) ++leg;
  return {eta.part(b.row) - b.col, leg};
}

FrobeniusCoords frobenius(const Partition& eta) {
  FrobeniusCoords out;
  const Rational half(1, 2);
  for (int i = 1; i <= eta.diagonal_length(); ++i) {
    auto [arm, leg] = arm_leg(eta, {i, i});
    out.a.emplace_back(Rational(arm) + half);
    out.b.emplace_back(Rational(leg) + half);
  }
  return out;
}

Partition from_frobenius(const FrobeniusCoords& coords) {
  if (coords.a.size() != coords.b.size()) throw DomainError("Frobenius coordinate lists differ in length");
  const Rational half(1, 2);
  const int r = static_cast<int>(coords.a.size());
  std::vector<int> arms(r), legs(r);
  for (int i = 0; i < r; ++i) {
    Rational a = coords.a[i] - half;
    Rational b = coords.b[i] - half;
    if (a.get_den() != 1 || b.get_den() != 1 || a < 0 || b < 0)
      throw DomainError("Frobenius coordinates must be non-negative half-integers");
    arms[i] = static_cast<int>(a.get_num().get_si());
    legs[i] = static_cast<int>(b.get_num().get_si());
  }
  // rows 1..r: eta_i = i + arm_i; rows below the diagonal square come from legs
  std::vector<int> parts;
  for (int i = 0; i < r; ++i) parts.push_back(i + 1 + arms[i]);
  int depth = r == 0 ? 0 : r + legs[0];
  for (int row = r + 1; row <= depth; ++row) {
    // number of diagonal columns j<=r whose leg reaches this row: j + leg_j >= row
    int width = 0;
    for (int j = 0; j < r; ++j)
      if (j + 1 + legs[j] >= row) ++width;
    parts.push_back(width);
  }
  return Partition(std::move(parts));
}

std::vector<Cover> covers(const Partition& eta) {
  std::vector<Cover> out;
  const int len = eta.length();
  for (int i = 1; i <= len + 1; ++i) {
    if (i == 1 || eta.part(i) < eta.part(i - 1)) {
      std::vector<int> parts = eta.parts();
      if (i == len + 1) {
        parts.push_back(1);
      } else {
        ++parts[i - 1];
      }
      out.push_back({Partition(std::move(parts)), {i, eta.part(i) + 1}});
    }
  }
  return out;
}

std::vector<Cover> cocovers(const Partition& eta) {
  std::vector<Cover> out;
  const int len = eta.length();
  for (int i = len; i >= 1; --i) {
    if (eta.part(i) > eta.part(i + 1)) {
      std::vector<int> parts = eta.parts();
      --parts[i - 1];
      out.push_back({Partition(std::move(parts)), {i, eta.part(i)}});
    }
  }
  std::sort(out.begin(), out.end(), [](const Cover& a, const Cover& b) { return a.partition > b.partition; });
  return out;
}

std::optional<Box> added_box(const Partition& eta, const Partition& zeta) {
  if (zeta.size() != eta.size() + 1 || !zeta.contains(eta)) return std::nullopt;
  for (int i = 1; i <= zeta.length(); ++i)
    if (zeta.part(i) != eta.part(i)) return Box{i, zeta.part(i)};
  return std::nullopt;
}

std::vector<Partition> subpartitions(const Partition& nu) {
  std::vector<Partition> out;
  std::vector<int> current;
  std::function<void(int, int)> rec = [&](int row, int bound) {
    out.emplace_back(current);
    if (row > nu.length()) return;
    for (int v = 1; v <= std::min(bound, nu.part(row)); ++v) {
      current.push_back(v);
      rec(row + 1, v);
      current.pop_back();
    }
  };
  rec(1, nu.empty() ? 0 : nu.part(1));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace zmd
