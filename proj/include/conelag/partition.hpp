#pragma once

// Partitions of fixed length r (weakly decreasing nonnegative tuples) index
// the spherical polynomial spaces and everything built on top of them.

#include <algorithm>
#include <numeric>
#include <optional>
#include <sstream>
#include <vector>

#include "conelag/core.hpp"

namespace conelag {

class Partition {
 public:
  Partition() = default;

  /// Pads or validates to exactly `rank` parts.
  explicit Partition(std::vector<int> parts, int rank = -1) : parts_(std::move(parts)) {
    if (rank >= 0) {
      if (int(parts_.size()) > rank)
        throw ConfigError("partition longer than rank");
      parts_.resize(rank, 0);
    }
    for (size_t i = 0; i < parts_.size(); ++i) {
      if (parts_[i] < 0) throw ConfigError("negative partition part");
      if (i + 1 < parts_.size() && parts_[i] < parts_[i + 1])
        throw ConfigError("partition parts must be weakly decreasing");
    }
  }

  static Partition zero(int rank) { return Partition(std::vector<int>(rank, 0)); }

  int rank() const { return int(parts_.size()); }
  int weight() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }
  int part(int j) const { return parts_[j]; }
  const std::vector<int>& parts() const { return parts_; }
  bool is_zero() const { return weight() == 0; }

  /// m - e_j if still a partition (0-based j).
  std::optional<Partition> lowered(int j) const {
    std::vector<int> p = parts_;
    p[j] -= 1;
    if (p[j] < 0) return std::nullopt;
    if (j + 1 < int(p.size()) && p[j] < p[j + 1]) return std::nullopt;
    return Partition(p);
  }

  /// m + e_j if still a partition (0-based j).
  std::optional<Partition> raised(int j) const {
    std::vector<int> p = parts_;
    p[j] += 1;
    if (j > 0 && p[j] > p[j - 1]) return std::nullopt;
    return Partition(p);
  }

  /// Containment n <= m part-wise.
  bool contains(const Partition& n) const {
    for (int j = 0; j < rank(); ++j)
      if (n.part(j) > parts_[j]) return false;
    return true;
  }

  /// Dominance order; only meaningful for equal weights.
  bool dominates(const Partition& n) const {
    int sa = 0, sb = 0;
    for (int j = 0; j < rank(); ++j) {
      sa += parts_[j];
      sb += n.part(j);
      if (sa < sb) return false;
    }
    return true;
  }

  bool operator==(const Partition& o) const { return parts_ == o.parts_; }
  bool operator!=(const Partition& o) const { return !(*this == o); }
  /// Graded order, lexicographically descending within a grade.  Dominance
  /// implies this order on equal weights, so it linearizes dominance.
  bool operator<(const Partition& o) const {
    if (weight() != o.weight()) return weight() < o.weight();
    return parts_ > o.parts_;
  }

  std::string str() const {
    std::ostringstream os;
    os << '(';
    for (int j = 0; j < rank(); ++j) os << (j ? "," : "") << parts_[j];
    os << ')';
    return os.str();
  }

 private:
  std::vector<int> parts_;
};

/// All partitions of `weight` into at most `rank` parts, first part
/// descending.
inline std::vector<Partition> partitions_of_weight(int rank, int weight) {
  std::vector<Partition> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int remaining, int maxpart, int slots) -> void {
    if (remaining == 0) {
      out.emplace_back(cur, rank);
      return;
    }
    if (slots == 0) return;
    for (int p = std::min(maxpart, remaining); p >= 1; --p) {
      // remaining parts cannot exceed p each
      if (long(p) * slots < remaining) break;
      cur.push_back(p);
      self(self, remaining - p, p, slots - 1);
      cur.pop_back();
    }
  };
  rec(rec, weight, weight, rank);
  return out;
}

/// All partitions of length <= r and weight <= N, padded to length r, in
/// graded lexicographic order.
inline std::vector<Partition> partitions_up_to(int rank, int max_weight) {
  if (rank < 1) throw ConfigError("rank must be >= 1");
  if (max_weight < 0) throw ConfigError("max weight must be >= 0");
  std::vector<Partition> out;
  for (int w = 0; w <= max_weight; ++w)
    for (auto& p : partitions_of_weight(rank, w)) out.push_back(p);
  return out;
}

}  // namespace conelag
