#pragma once

// Exploration instruments: the tower-growth consistency check for Følner
// sets, strict-monotonicity mass and invariance defect for finitely
// supported measures on standard partitions, and Cayley-ball enumeration.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "thompson/error.hpp"
#include "thompson/exact_number.hpp"
#include "thompson/felement.hpp"
#include "thompson/folner.hpp"
#include "thompson/parallel.hpp"
#include "thompson/partition.hpp"

namespace thompson {

inline constexpr unsigned max_tower_height = 6;

/// exp_n(0): 0, 1, 2, 4, 16, 65536, 2^65536.
inline BigInt tower(unsigned n) {
  if (n > max_tower_height) throw Error(ErrorKind::tower_too_tall, "exp_" + std::to_string(n) + "(0) is too large");
  BigInt v = 0;
  for (unsigned i = 0; i < n; ++i) {
    const auto e = static_cast<unsigned>(v);
    v = BigInt(1) << e;
  }
  return v;
}

struct TowerVerdict {
  unsigned n = 0;
  std::optional<BigInt> bound;  // absent when exp_n(0) is too large to materialize
  std::uint64_t observed_size = 0;
  bool consistent = false;
};

/// n is the largest integer >= 0 with C^-n >= defect (0 when defect > 1);
/// the set is consistent with the growth bound iff size >= exp_n(0).
inline TowerVerdict tower_check(std::uint64_t size, const ExactNumber& defect, const ExactNumber& c) {
  if (defect.sign() <= 0) throw Error(ErrorKind::out_of_range, "tower_check needs a positive defect");
  if (!(ExactNumber(1) < c)) throw Error(ErrorKind::out_of_range, "tower_check needs C > 1");
  TowerVerdict v;
  v.observed_size = size;
  ExactNumber next = ExactNumber(1) / c;
  while (!(next < defect)) {
    ++v.n;
    next /= c;
  }
  if (v.n <= max_tower_height) {
    v.bound = tower(v.n);
    v.consistent = BigInt(size) >= *v.bound;
  } else {
    // exp_7(0) exceeds every 64-bit size.
    v.consistent = false;
  }
  return v;
}

class IntervalChain {
 public:
  using Interval = std::pair<ExactNumber, ExactNumber>;

  /// 0 < lo_0 < hi_0 < lo_1 < hi_1 < ... < hi_last < 1.
  static IntervalChain from_intervals(std::vector<Interval> intervals) {
    ExactNumber prev(0);
    for (const auto& [lo, hi] : intervals) {
      if (!(prev < lo) || !(lo < hi)) {
        throw Error(ErrorKind::malformed_input, "interval chain must satisfy 0 < lo_i < hi_i < lo_(i+1) and hi < 1");
      }
      prev = hi;
    }
    if (!intervals.empty() && !(intervals.back().second < ExactNumber(1))) {
      throw Error(ErrorKind::malformed_input, "last interval must end below 1");
    }
    IntervalChain c;
    c.intervals_ = std::move(intervals);
    return c;
  }

  const std::vector<Interval>& intervals() const noexcept { return intervals_; }
  std::size_t size() const noexcept { return intervals_.size(); }

 private:
  std::vector<Interval> intervals_;
};

class FiniteMeasure {
 public:
  struct Atom {
    DyadicPartition partition;
    ExactNumber weight;
  };

  /// Distinct support points, positive weights summing to exactly 1.
  static FiniteMeasure from_atoms(std::vector<Atom> atoms) {
    std::sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) { return a.partition < b.partition; });
    ExactNumber total(0);
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      if (atoms[i].weight.sign() <= 0) throw Error(ErrorKind::invalid_measure, "weights must be positive");
      if (i > 0 && atoms[i].partition == atoms[i - 1].partition) {
        throw Error(ErrorKind::invalid_measure, "repeated support point");
      }
      total += atoms[i].weight;
    }
    if (total != ExactNumber(1)) throw Error(ErrorKind::invalid_measure, "weights sum to " + total.str() + ", not 1");
    FiniteMeasure m;
    m.atoms_ = std::move(atoms);
    return m;
  }

  static FiniteMeasure point_mass(DyadicPartition t) { return from_atoms({{std::move(t), ExactNumber(1)}}); }

  const std::vector<Atom>& atoms() const noexcept { return atoms_; }

 private:
  std::vector<Atom> atoms_;
};

/// Number of points of T in the closed interval [lo, hi].
inline std::size_t count_closed(const DyadicPartition& t, const ExactNumber& lo, const ExactNumber& hi) {
  const auto& pts = t.points();
  auto first = std::lower_bound(pts.begin(), pts.end(), lo);
  auto last = std::upper_bound(first, pts.end(), hi);
  return static_cast<std::size_t>(last - first);
}

inline bool strictly_monotone(const std::vector<std::size_t>& seq) {
  bool up = true;
  bool down = true;
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
    up = up && seq[i] < seq[i + 1];
    down = down && seq[i] > seq[i + 1];
  }
  return up || down;
}

/// Weight of the support points T whose counts |T ∩ I_i| are strictly monotone.
inline ExactNumber monotonicity_mass(const FiniteMeasure& mu, const IntervalChain& chain) {
  if (chain.size() < 2) throw Error(ErrorKind::malformed_input, "interval chain needs at least two intervals");
  ExactNumber mass(0);
  for (const auto& atom : mu.atoms()) {
    std::vector<std::size_t> counts;
    counts.reserve(chain.size());
    for (const auto& [lo, hi] : chain.intervals()) counts.push_back(count_closed(atom.partition, lo, hi));
    if (strictly_monotone(counts)) mass += atom.weight;
  }
  return mass;
}

/// Total-variation distance between mu and its pushforward under the partial
/// action T ↦ g·T. Mass on which the action is undefined goes to a separate
/// "undefined" atom, so a wholly undefined point mass has defect 1.
inline ExactNumber invariance_defect(const FiniteMeasure& mu, const FElement& g) {
  std::map<DyadicPartition, ExactNumber> diff;  // mu - g_*mu
  ExactNumber undefined(0);
  const DyadicPartition domain = to_minimal_pair(g).domain;
  for (const auto& atom : mu.atoms()) {
    diff[atom.partition] += atom.weight;
    if (!domain.is_subset_of(atom.partition)) {
      undefined += atom.weight;
      continue;
    }
    diff[act_partition(g, atom.partition)] -= atom.weight;
  }
  ExactNumber total = undefined;
  for (const auto& [t, d] : diff) total += d.sign() < 0 ? -d : d;
  return total * ExactNumber::pow2(-1);
}

inline constexpr unsigned default_max_radius = 8;

struct BallEnumeration {
  ElementSet elements;
  std::map<CanonicalKey, std::string> witness;  // shortest word found first by BFS
  std::vector<std::size_t> sphere_sizes;         // sphere_sizes[k] = |ball(k)| - |ball(k-1)|
};

/// Breadth-first enumeration of words of length <= r over the generators.
/// The frontier is expanded in parallel; merging happens in frontier order,
/// so the result does not depend on the thread count.
inline BallEnumeration ball_enumeration(unsigned r, unsigned max_radius = default_max_radius, unsigned threads = 1,
                                        const std::vector<NamedElement>& gens = generators()) {
  if (r > max_radius) {
    throw Error(ErrorKind::radius_too_large, "radius " + std::to_string(r) + " exceeds limit " + std::to_string(max_radius));
  }
  BallEnumeration out;
  std::vector<std::pair<CanonicalKey, FElement>> frontier{{canonical_key(FElement::identity()), FElement::identity()}};
  out.elements.insert(frontier.front().first, frontier.front().second);
  out.witness[frontier.front().first] = "";
  out.sphere_sizes.push_back(1);
  for (unsigned level = 1; level <= r; ++level) {
    auto products = parallel_map(frontier.size(), threads, [&](std::size_t i) {
      std::vector<std::pair<CanonicalKey, FElement>> row;
      row.reserve(gens.size());
      for (const auto& g : gens) {
        FElement p = compose(g.element, frontier[i].second);
        row.emplace_back(canonical_key(p), std::move(p));
      }
      return row;
    });
    std::vector<std::pair<CanonicalKey, FElement>> next;
    for (std::size_t i = 0; i < products.size(); ++i) {
      const std::string& parent_word = out.witness.at(frontier[i].first);
      for (std::size_t j = 0; j < products[i].size(); ++j) {
        auto& [key, elem] = products[i][j];
        if (!out.elements.insert(key, elem)) continue;
        out.witness[key] = parent_word.empty() ? gens[j].name : gens[j].name + " " + parent_word;
        next.emplace_back(std::move(key), std::move(elem));
      }
    }
    out.sphere_sizes.push_back(next.size());
    frontier = std::move(next);
  }
  return out;
}

inline ElementSet ball(unsigned r, unsigned max_radius = default_max_radius, unsigned threads = 1) {
  return ball_enumeration(r, max_radius, threads).elements;
}

}  // namespace thompson
