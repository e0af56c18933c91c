#pragma once

// Marked sets (finite subsets of [0,1] containing both endpoints), standard
// dyadic partitions, and the maximal-partition operator T(X).

#include <algorithm>
#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "thompson/error.hpp"
#include "thompson/exact_number.hpp"

namespace thompson {

class MarkedSet {
 public:
  /// Sorts and deduplicates; every point must lie in [0,1] and both 0 and 1 must be present.
  static MarkedSet from_points(std::vector<ExactNumber> points) {
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    if (!points.empty() && (points.front().sign() < 0 || points.back() > ExactNumber(1))) {
      throw Error(ErrorKind::out_of_range, "marked set points must lie in [0,1]");
    }
    if (points.size() < 2 || points.front() != ExactNumber(0) || points.back() != ExactNumber(1)) {
      throw Error(ErrorKind::invalid_marked_set, "a marked set must contain 0 and 1");
    }
    return MarkedSet(std::move(points));
  }

  /// Caller guarantees the invariants (strictly increasing, 0 first, 1 last).
  static MarkedSet from_sorted_unchecked(std::vector<ExactNumber> points) { return MarkedSet(std::move(points)); }

  const std::vector<ExactNumber>& points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }

  bool contains(const ExactNumber& x) const { return std::binary_search(points_.begin(), points_.end(), x); }

  bool is_subset_of(const MarkedSet& other) const {
    return std::includes(other.points_.begin(), other.points_.end(), points_.begin(), points_.end());
  }

  /// Number of points in the half-open interval [lo, hi).
  std::size_t count_in(const ExactNumber& lo, const ExactNumber& hi) const {
    auto first = std::lower_bound(points_.begin(), points_.end(), lo);
    auto last = std::lower_bound(first, points_.end(), hi);
    return static_cast<std::size_t>(last - first);
  }

  friend bool operator==(const MarkedSet&, const MarkedSet&) = default;
  friend std::strong_ordering operator<=>(const MarkedSet& a, const MarkedSet& b) {
    return std::lexicographical_compare_three_way(a.points_.begin(), a.points_.end(), b.points_.begin(),
                                                  b.points_.end());
  }

 private:
  explicit MarkedSet(std::vector<ExactNumber> points) : points_(std::move(points)) {}

  std::vector<ExactNumber> points_;
};

/// [a, b] is (p/2^q, (p+1)/2^q) for some p, q >= 0.
inline bool is_standard_interval(const ExactNumber& a, const ExactNumber& b) {
  if (!(a < b)) return false;
  const ExactNumber len = b - a;
  const auto k = len.log2_exact();
  if (!k || *k > 0) return false;
  // a must be a multiple of len = 2^k, i.e. dyadic with exponent <= -k.
  return a.is_dyadic() && a.dyadic_exponent() <= -*k;
}

inline bool is_standard(const MarkedSet& x) {
  const auto& pts = x.points();
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    if (!is_standard_interval(pts[i], pts[i + 1])) return false;
  }
  return true;
}

/// A marked set whose consecutive points bound standard dyadic intervals.
class DyadicPartition {
 public:
  static DyadicPartition from_marked(MarkedSet set) {
    if (!is_standard(set)) throw Error(ErrorKind::not_standard, "marked set is not a standard dyadic partition");
    return DyadicPartition(std::move(set));
  }

  static std::optional<DyadicPartition> try_from(MarkedSet set) {
    if (!is_standard(set)) return std::nullopt;
    return DyadicPartition(std::move(set));
  }

  static DyadicPartition from_points(std::vector<ExactNumber> points) {
    return from_marked(MarkedSet::from_points(std::move(points)));
  }

  static DyadicPartition trivial() { return DyadicPartition(MarkedSet::from_sorted_unchecked({ExactNumber(0), ExactNumber(1)})); }

  const MarkedSet& marked() const noexcept { return set_; }
  const std::vector<ExactNumber>& points() const noexcept { return set_.points(); }
  std::size_t size() const noexcept { return set_.size(); }
  bool contains(const ExactNumber& x) const { return set_.contains(x); }
  bool is_subset_of(const DyadicPartition& other) const { return set_.is_subset_of(other.set_); }

  friend bool operator==(const DyadicPartition&, const DyadicPartition&) = default;
  friend std::strong_ordering operator<=>(const DyadicPartition& a, const DyadicPartition& b) { return a.set_ <=> b.set_; }

  // Used by the algorithms in this library that produce valid partitions by construction.
  static DyadicPartition unchecked(MarkedSet set) { return DyadicPartition(std::move(set)); }

 private:
  explicit DyadicPartition(MarkedSet set) : set_(std::move(set)) {}

  MarkedSet set_;
};

/// Largest gap between consecutive points.
inline ExactNumber mesh(const MarkedSet& x) {
  const auto& pts = x.points();
  ExactNumber best(0);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    ExactNumber gap = pts[i + 1] - pts[i];
    if (best < gap) best = std::move(gap);
  }
  return best;
}

inline ExactNumber mesh(const DyadicPartition& t) { return mesh(t.marked()); }

/// {1 - 2^-i : 0 <= i <= n+1} together with 1; n + 3 points.
inline DyadicPartition i_n(unsigned n) {
  std::vector<ExactNumber> pts;
  pts.reserve(n + 3);
  for (unsigned i = 0; i <= n + 1; ++i) pts.push_back(ExactNumber(1) - ExactNumber::pow2(-static_cast<int>(i)));
  pts.emplace_back(1);
  return DyadicPartition::unchecked(MarkedSet::from_sorted_unchecked(std::move(pts)));
}

namespace detail {

using PointIter = std::vector<ExactNumber>::const_iterator;

// [first, last) are the points of X inside [lo, hi); the range is nonempty.
inline void subdivide(const ExactNumber& lo, const ExactNumber& hi, PointIter first, PointIter last,
                      std::vector<ExactNumber>& out) {
  ExactNumber mid = midpoint(lo, hi);
  PointIter split = std::lower_bound(first, last, mid);
  if (split == first || split == last) {
    out.push_back(lo);
    return;
  }
  subdivide(lo, mid, first, split, out);
  subdivide(mid, hi, split, last, out);
}

}  // namespace detail

/// The largest standard dyadic partition whose half-open leaves [s, t) each
/// contain a point of X. A leaf is split exactly when both halves meet X.
inline DyadicPartition t_of(const MarkedSet& x) {
  const auto& pts = x.points();
  std::vector<ExactNumber> out;
  // The point 1 never lies in a half-open leaf.
  detail::subdivide(ExactNumber(0), ExactNumber(1), pts.begin(), pts.end() - 1, out);
  out.emplace_back(1);
  return DyadicPartition::unchecked(MarkedSet::from_sorted_unchecked(std::move(out)));
}

/// Every leaf [s, t) of T contains a point of X.
inline bool satisfies_leaf_condition(const DyadicPartition& t, const MarkedSet& x) {
  const auto& pts = t.points();
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    if (x.count_in(pts[i], pts[i + 1]) == 0) return false;
  }
  return true;
}

/// The same condition stated for every pair s < t of T, not just consecutive ones.
inline bool satisfies_pair_condition(const DyadicPartition& t, const MarkedSet& x) {
  const auto& pts = t.points();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      if (x.count_in(pts[i], pts[j]) == 0) return false;
    }
  }
  return true;
}

/// S ∪ T; the union of two standard partitions is standard.
inline DyadicPartition common_refinement(const DyadicPartition& s, const DyadicPartition& t) {
  std::vector<ExactNumber> out;
  out.reserve(s.size() + t.size());
  std::set_union(s.points().begin(), s.points().end(), t.points().begin(), t.points().end(), std::back_inserter(out));
  return DyadicPartition::from_marked(MarkedSet::from_sorted_unchecked(std::move(out)));
}

/// All standard dyadic partitions whose leaves have length >= 2^-depth, in
/// lexicographic order. Grows as 1, 2, 5, 26, 677, ... so depth is capped at 5.
inline std::vector<DyadicPartition> enumerate_standard_partitions(unsigned depth) {
  if (depth > 5) throw Error(ErrorKind::out_of_range, "enumeration depth above 5 is infeasible");
  // Leaf sequences of every tree rooted at [lo, hi) with the given remaining depth.
  struct Rec {
    static std::vector<std::vector<ExactNumber>> run(const ExactNumber& lo, const ExactNumber& hi, unsigned d) {
      std::vector<std::vector<ExactNumber>> result{{lo}};
      if (d == 0) return result;
      const ExactNumber mid = midpoint(lo, hi);
      auto left = run(lo, mid, d - 1);
      auto right = run(mid, hi, d - 1);
      for (const auto& l : left) {
        for (const auto& r : right) {
          std::vector<ExactNumber> v = l;
          v.insert(v.end(), r.begin(), r.end());
          result.push_back(std::move(v));
        }
      }
      return result;
    }
  };
  std::vector<DyadicPartition> out;
  for (auto& starts : Rec::run(ExactNumber(0), ExactNumber(1), depth)) {
    starts.emplace_back(1);
    out.push_back(DyadicPartition::unchecked(MarkedSet::from_sorted_unchecked(std::move(starts))));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace thompson
