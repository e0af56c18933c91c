#pragma once

// Seeded generators for the randomized suites.
//
// Every case draws from its own std::mt19937_64 seeded from (seed, suite,
// case index), so a suite's result does not depend on how cases are spread
// over threads.

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "thompson/exact_number.hpp"
#include "thompson/felement.hpp"
#include "thompson/partition.hpp"

namespace thompson::gen {

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline Rng case_rng(std::uint64_t seed, std::string_view suite, std::uint64_t index) {
  std::uint64_t h = 1469598103934665603ULL;  // FNV-1a
  for (unsigned char c : suite) h = (h ^ c) * 1099511628211ULL;
  return Rng(splitmix64(splitmix64(seed ^ h) + index));
}

inline std::uint64_t uniform(Rng& rng, std::uint64_t lo, std::uint64_t hi) {
  return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng);
}

/// p/2^q with q uniform in [1, max_exp] and p uniform in [1, 2^q - 1].
inline ExactNumber interior_dyadic(Rng& rng, unsigned max_exp = 10) {
  const auto q = static_cast<std::uint32_t>(uniform(rng, 1, max_exp));
  const std::uint64_t p = uniform(rng, 1, (std::uint64_t{1} << q) - 1);
  return ExactNumber::dyadic(BigInt(p), q);
}

/// The 1/16 grid plus 0..16 extra interior dyadics of exponent <= 10. Mesh <= 1/16.
inline MarkedSet grid_plus_extras(Rng& rng) {
  std::vector<ExactNumber> pts;
  for (int k = 0; k <= 16; ++k) pts.push_back(ExactNumber(BigInt(k), BigInt(16)));
  const auto extras = uniform(rng, 0, 16);
  for (std::uint64_t i = 0; i < extras; ++i) pts.push_back(interior_dyadic(rng));
  return MarkedSet::from_points(std::move(pts));
}

namespace detail {

// Gap of k/1024 with k in [lo_k, hi_k]; one step in eight is shrunk by 2/3 so
// that non-dyadic rationals show up.
inline ExactNumber walk_gap(Rng& rng, std::uint64_t lo_k, std::uint64_t hi_k) {
  ExactNumber gap(BigInt(uniform(rng, lo_k, hi_k)), BigInt(1024));
  if (uniform(rng, 0, 7) == 0) gap = gap * ExactNumber(BigInt(2), BigInt(3));
  return gap;
}

}  // namespace detail

/// Random walk from 0 with steps in (0, 1/16]; not aligned to any grid. Mesh <= 1/16.
inline MarkedSet fine_walk(Rng& rng) {
  std::vector<ExactNumber> pts{ExactNumber(0)};
  const ExactNumber one(1);
  while (true) {
    ExactNumber next = pts.back() + detail::walk_gap(rng, 1, 64);
    if (!(next < one)) break;
    pts.push_back(std::move(next));
  }
  pts.push_back(one);
  return MarkedSet::from_sorted_unchecked(std::move(pts));
}

/// Mesh <= 1/16: alternates between the two generators above.
inline MarkedSet fine_marked_set(Rng& rng) { return uniform(rng, 0, 1) == 0 ? grid_plus_extras(rng) : fine_walk(rng); }

/// Consecutive points at least 1/16 apart.
inline MarkedSet sparse_marked_set(Rng& rng) {
  const ExactNumber min_gap(BigInt(1), BigInt(16));
  const ExactNumber one(1);
  std::vector<ExactNumber> pts{ExactNumber(0)};
  while (true) {
    // Shrinking by 2/3 may dip below 1/16; step sizes start at 96/1024 for that reason.
    ExactNumber next = pts.back() + detail::walk_gap(rng, 96, 320);
    if (one - next < min_gap) break;
    pts.push_back(std::move(next));
  }
  pts.push_back(one);
  return MarkedSet::from_sorted_unchecked(std::move(pts));
}

/// Splits random leaves of `base` until it has `target` points (or more, if base is already larger).
inline DyadicPartition refine_randomly(Rng& rng, const DyadicPartition& base, std::size_t target) {
  std::vector<ExactNumber> pts = base.points();
  while (pts.size() < target) {
    const auto leaf = static_cast<std::size_t>(uniform(rng, 0, pts.size() - 2));
    ExactNumber mid = midpoint(pts[leaf], pts[leaf + 1]);
    pts.insert(pts.begin() + static_cast<std::ptrdiff_t>(leaf) + 1, std::move(mid));
  }
  return DyadicPartition::unchecked(MarkedSet::from_sorted_unchecked(std::move(pts)));
}

/// Random T ⊇ base with |T| uniform in [|base|, max_size].
inline DyadicPartition partition_containing(Rng& rng, const DyadicPartition& base, std::size_t max_size) {
  const std::size_t lo = base.size();
  const std::size_t target = lo >= max_size ? lo : static_cast<std::size_t>(uniform(rng, lo, max_size));
  return refine_randomly(rng, base, target);
}

/// Random tree pair with the same number of leaves, 1..max_leaves.
inline PartitionPair tree_pair(Rng& rng, std::size_t max_leaves = 16) {
  const auto leaves = static_cast<std::size_t>(uniform(rng, 1, max_leaves));
  DyadicPartition s = refine_randomly(rng, DyadicPartition::trivial(), leaves + 1);
  DyadicPartition t = refine_randomly(rng, DyadicPartition::trivial(), leaves + 1);
  return {std::move(s), std::move(t)};
}

/// Indices into a generator table ordered x0, x1, x0^-1, x1^-1.
using Word = std::vector<std::size_t>;

inline Word word(Rng& rng, std::size_t max_len) {
  Word w(static_cast<std::size_t>(uniform(rng, 0, max_len)));
  for (auto& letter : w) letter = static_cast<std::size_t>(uniform(rng, 0, 3));
  return w;
}

/// Formal inverse: reversed, each letter replaced by its inverse letter.
inline Word inverse_word(const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (auto& letter : out) letter ^= 2;
  return out;
}

inline FElement evaluate(const Word& w, const std::vector<NamedElement>& gens) {
  FElement acc;
  for (std::size_t letter : w) acc = compose(acc, gens.at(letter).element);
  return acc;
}

inline std::string spell(const Word& w, const std::vector<NamedElement>& gens) {
  std::string s;
  for (std::size_t letter : w) {
    if (!s.empty()) s += ' ';
    s += gens.at(letter).name;
  }
  return s.empty() ? "id" : s;
}

}  // namespace thompson::gen
