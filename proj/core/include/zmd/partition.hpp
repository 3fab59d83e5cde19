#pragma once

#include <compare>
#include <optional>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "zmd/rational.hpp"

namespace zmd {

/// A cell of a Young diagram, 1-indexed (row grows downward, column to the right).
struct Box {
  int row = 0;
  int col = 0;
  friend bool operator==(const Box&, const Box&) = default;
};

/// Integer partition / Young diagram. Immutable value; parts are positive and
/// non-increasing. The empty partition has no parts and size 0.
class Partition {
 public:
  Partition() = default;
  explicit Partition(std::vector<int> parts);
  Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}

  /// "5,4,1" -> (5,4,1); "" (or "0", or the empty-set sign) -> empty partition.
  static Partition parse(std::string_view text);

  const std::vector<int>& parts() const { return parts_; }
  int size() const { return size_; }
  int length() const { return static_cast<int>(parts_.size()); }
  bool empty() const { return parts_.empty(); }

  /// eta_i with the convention eta_i = 0 for i > length().
  int part(int i) const { return (i >= 1 && i <= length()) ? parts_[i - 1] : 0; }

  Partition conjugate() const;

  /// alpha_i(eta): number of parts equal to i.
  int multiplicity(int value) const;

  bool contains(Box b) const { return b.row >= 1 && b.col >= 1 && b.col <= part(b.row); }
  /// True when `inner` fits inside this diagram.
  bool contains(const Partition& inner) const;

  std::vector<Box> boxes() const;
  int diagonal_length() const;

  /// Sum of contents (j-1)-(i-1) over all boxes.
  long content_sum() const;

  /// Comma-separated parts; empty string for the empty partition.
  std::string to_string() const;

  friend auto operator<=>(const Partition& a, const Partition& b) { return a.parts_ <=> b.parts_; }
  friend bool operator==(const Partition& a, const Partition& b) { return a.parts_ == b.parts_; }

 private:
  std::vector<int> parts_;
  int size_ = 0;
};

struct PartitionHash {
  std::size_t operator()(const Partition& p) const noexcept;
};

/// All partitions of n in reverse-lexicographic order: (n), (n-1,1), ..., (1^n).
std::vector<Partition> enumerate_partitions(int n);

/// p(n) by the standard coin-change recurrence.
std::int64_t partition_count(int n);

/// Dominance order: a >= b iff partial sums of a dominate those of b (equal sizes).
bool dominates(const Partition& a, const Partition& b);

/// (arm, leg) = (eta_i - j, eta'_j - i). Throws DomainError for a box outside eta.
std::pair<int, int> arm_leg(const Partition& eta, Box b);

struct FrobeniusCoords {
  std::vector<Rational> a;  // a(i,i) + 1/2
  std::vector<Rational> b;  // l(i,i) + 1/2
};

FrobeniusCoords frobenius(const Partition& eta);
Partition from_frobenius(const FrobeniusCoords& coords);

struct Cover {
  Partition partition;
  Box box;  // the box added (covers) or removed (cocovers)
};

/// Every zeta with |zeta| = |eta|+1 containing eta, in reverse-lex order of zeta.
std::vector<Cover> covers(const Partition& eta);
/// Every zeta with |zeta| = |eta|-1 contained in eta, in reverse-lex order of zeta.
std::vector<Cover> cocovers(const Partition& eta);

/// If zeta covers eta, returns the added box.
std::optional<Box> added_box(const Partition& eta, const Partition& zeta);

/// All partitions contained in nu (including the empty one and nu itself).
std::vector<Partition> subpartitions(const Partition& nu);

}  // namespace zmd
