#pragma once

// Elements of Thompson's group F as piecewise-linear homeomorphisms of [0,1]
// stored by their canonical breakpoint list.

#include <algorithm>
#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "thompson/error.hpp"
#include "thompson/exact_number.hpp"
#include "thompson/partition.hpp"

namespace thompson {

struct Breakpoint {
  ExactNumber x;
  ExactNumber y;

  friend bool operator==(const Breakpoint&, const Breakpoint&) = default;
};

/// Byte string determined by the canonical breakpoint list.
using CanonicalKey = std::string;

class FElement {
 public:
  FElement() : breaks_{{ExactNumber(0), ExactNumber(0)}, {ExactNumber(1), ExactNumber(1)}}, slopes_{0} {}

  static FElement identity() { return FElement(); }

  /// Validates the breakpoint list and drops interior points where the slope does not change.
  static FElement from_breaks(std::vector<Breakpoint> breaks) {
    if (breaks.size() < 2) throw Error(ErrorKind::invalid_element, "need at least two breakpoints");
    if (breaks.front() != Breakpoint{ExactNumber(0), ExactNumber(0)} ||
        breaks.back() != Breakpoint{ExactNumber(1), ExactNumber(1)}) {
      throw Error(ErrorKind::invalid_element, "breakpoints must start at (0,0) and end at (1,1)");
    }
    for (const auto& b : breaks) {
      if (!b.x.is_dyadic() || !b.y.is_dyadic()) {
        throw Error(ErrorKind::invalid_element, "non-dyadic breakpoint (" + b.x.str() + ", " + b.y.str() + ")");
      }
    }
    return build(std::move(breaks));
  }

  const std::vector<Breakpoint>& breaks() const noexcept { return breaks_; }
  /// log2 of the slope on each segment.
  const std::vector<int>& slope_exponents() const noexcept { return slopes_; }

  bool is_identity() const noexcept { return breaks_.size() == 2; }

  /// Image of t; t must lie in [0,1].
  ExactNumber operator()(const ExactNumber& t) const { return eval(t, false); }

  /// Preimage of t.
  ExactNumber preimage(const ExactNumber& t) const { return eval(t, true); }

  FElement inverse() const {
    FElement r;
    r.breaks_.clear();
    r.breaks_.reserve(breaks_.size());
    for (const auto& b : breaks_) r.breaks_.push_back({b.y, b.x});
    r.slopes_.clear();
    for (int s : slopes_) r.slopes_.push_back(-s);
    return r;
  }

  friend bool operator==(const FElement& a, const FElement& b) { return a.breaks_ == b.breaks_; }

  // Internal: breakpoints known to describe an element of F (e.g. a composite).
  static FElement from_trusted(std::vector<Breakpoint> breaks) { return build(std::move(breaks)); }

 private:
  static FElement build(std::vector<Breakpoint> breaks) {
    std::vector<int> slopes;
    slopes.reserve(breaks.size() - 1);
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
      const ExactNumber dx = breaks[i + 1].x - breaks[i].x;
      const ExactNumber dy = breaks[i + 1].y - breaks[i].y;
      if (dx.sign() <= 0 || dy.sign() <= 0) {
        throw Error(ErrorKind::invalid_element, "breakpoints must be strictly increasing in both coordinates");
      }
      const auto k = (dy / dx).log2_exact();
      if (!k) throw Error(ErrorKind::invalid_element, "slope " + (dy / dx).str() + " is not a power of two");
      slopes.push_back(*k);
    }
    FElement r;
    r.breaks_.clear();
    r.slopes_.clear();
    r.breaks_.push_back(std::move(breaks.front()));
    for (std::size_t i = 0; i < slopes.size(); ++i) {
      if (!r.slopes_.empty() && r.slopes_.back() == slopes[i]) {
        r.breaks_.back() = std::move(breaks[i + 1]);
      } else {
        r.slopes_.push_back(slopes[i]);
        r.breaks_.push_back(std::move(breaks[i + 1]));
      }
    }
    return r;
  }

  ExactNumber eval(const ExactNumber& t, bool backwards) const {
    if (!in_unit_interval(t)) throw Error(ErrorKind::out_of_range, t.str() + " is outside [0,1]");
    auto key = [backwards](const Breakpoint& b) -> const ExactNumber& { return backwards ? b.y : b.x; };
    auto val = [backwards](const Breakpoint& b) -> const ExactNumber& { return backwards ? b.x : b.y; };
    // First breakpoint strictly beyond t; t = 1 falls on the last breakpoint.
    auto it = std::upper_bound(breaks_.begin(), breaks_.end(), t,
                               [&](const ExactNumber& v, const Breakpoint& b) { return v < key(b); });
    const auto seg = static_cast<std::size_t>(it - breaks_.begin()) - 1;
    const Breakpoint& b = breaks_[seg];
    if (key(b) == t) return val(b);
    const int k = backwards ? -slopes_[seg] : slopes_[seg];
    return val(b) + (t - key(b)) * ExactNumber::pow2(k);
  }

  std::vector<Breakpoint> breaks_;
  std::vector<int> slopes_;
};

inline ExactNumber apply(const FElement& f, const ExactNumber& t) { return f(t); }

inline FElement invert(const FElement& f) { return f.inverse(); }

/// g ∘ f: f is applied first.
inline FElement compose(const FElement& g, const FElement& f) {
  if (f.is_identity()) return g;
  if (g.is_identity()) return f;
  std::vector<ExactNumber> xs;
  xs.reserve(f.breaks().size() + g.breaks().size());
  std::vector<ExactNumber> pulled;
  pulled.reserve(g.breaks().size());
  for (const auto& b : g.breaks()) pulled.push_back(f.preimage(b.x));
  std::vector<ExactNumber> own;
  own.reserve(f.breaks().size());
  for (const auto& b : f.breaks()) own.push_back(b.x);
  std::set_union(own.begin(), own.end(), pulled.begin(), pulled.end(), std::back_inserter(xs));
  std::vector<Breakpoint> out;
  out.reserve(xs.size());
  for (auto& x : xs) {
    ExactNumber y = g(f(x));
    out.push_back({std::move(x), std::move(y)});
  }
  return FElement::from_trusted(std::move(out));
}

/// Canonical key; equal keys iff equal elements.
inline CanonicalKey canonical_key(const FElement& f) {
  CanonicalKey key;
  for (const auto& b : f.breaks()) {
    key += b.x.str();
    key += ',';
    key += b.y.str();
    key += ';';
  }
  return key;
}

struct PartitionPair {
  DyadicPartition domain;
  DyadicPartition range;

  friend bool operator==(const PartitionPair&, const PartitionPair&) = default;
};

/// The map sending the domain partition onto the range partition in order, affine in between.
inline FElement from_pair(const PartitionPair& pair) {
  if (pair.domain.size() != pair.range.size()) {
    throw Error(ErrorKind::cardinality_mismatch, "domain has " + std::to_string(pair.domain.size()) +
                                                     " points, range has " + std::to_string(pair.range.size()));
  }
  std::vector<Breakpoint> breaks;
  breaks.reserve(pair.domain.size());
  for (std::size_t i = 0; i < pair.domain.size(); ++i) breaks.push_back({pair.domain.points()[i], pair.range.points()[i]});
  return FElement::from_breaks(std::move(breaks));
}

/// Smallest partition pair representing f. A leaf is kept when f is affine on
/// it and maps it onto a standard interval; otherwise it is halved.
inline PartitionPair to_minimal_pair(const FElement& f) {
  const auto& br = f.breaks();
  std::vector<ExactNumber> dom;
  std::vector<ExactNumber> ran;
  std::vector<std::pair<ExactNumber, ExactNumber>> stack{{ExactNumber(0), ExactNumber(1)}};
  while (!stack.empty()) {
    auto [lo, hi] = std::move(stack.back());
    stack.pop_back();
    auto inner = std::upper_bound(br.begin(), br.end(), lo, [](const ExactNumber& v, const Breakpoint& b) { return v < b.x; });
    const bool affine = inner == br.end() || !(inner->x < hi);
    ExactNumber flo = f(lo);
    if (affine && is_standard_interval(flo, f(hi))) {
      dom.push_back(std::move(lo));
      ran.push_back(std::move(flo));
      continue;
    }
    ExactNumber mid = midpoint(lo, hi);
    stack.emplace_back(mid, std::move(hi));
    stack.emplace_back(std::move(lo), std::move(mid));
  }
  dom.emplace_back(1);
  ran.emplace_back(1);
  return {DyadicPartition::unchecked(MarkedSet::from_sorted_unchecked(std::move(dom))),
          DyadicPartition::unchecked(MarkedSet::from_sorted_unchecked(std::move(ran)))};
}

/// Which way an element acts on marked sets: left applies g, right applies g⁻¹,
/// so that (X·g)·h = X·(gh).
enum class Side { left, right };

constexpr std::string_view to_string(Side side) noexcept { return side == Side::left ? "left" : "right"; }

inline MarkedSet act_marked(const FElement& f, const MarkedSet& x, Side side = Side::left) {
  std::vector<ExactNumber> out;
  out.reserve(x.size());
  for (const auto& p : x.points()) out.push_back(side == Side::left ? f(p) : f.preimage(p));
  return MarkedSet::from_sorted_unchecked(std::move(out));
}

/// g·T, defined only when the domain partition of g's minimal pair lies in T.
inline std::optional<DyadicPartition> try_act_partition(const FElement& g, const DyadicPartition& t) {
  if (!to_minimal_pair(g).domain.is_subset_of(t)) return std::nullopt;
  std::vector<ExactNumber> out;
  out.reserve(t.size());
  for (const auto& p : t.points()) out.push_back(g(p));
  return DyadicPartition::unchecked(MarkedSet::from_sorted_unchecked(std::move(out)));
}

inline DyadicPartition act_partition(const FElement& g, const DyadicPartition& t) {
  auto r = try_act_partition(g, t);
  if (!r) throw Error(ErrorKind::domain_not_contained, "domain partition of the element is not contained in T");
  return std::move(*r);
}

/// f_T: the element represented by (I_n, T) with |I_n| = |T|.
inline FElement f_of_partition(const DyadicPartition& t) {
  if (t.size() < 3) throw Error(ErrorKind::too_few_points, "f_T needs |T| >= 3");
  return from_pair({i_n(static_cast<unsigned>(t.size() - 3)), t});
}

struct NamedElement {
  std::string name;
  FElement element;
};

namespace detail {

inline std::vector<ExactNumber> nums(std::initializer_list<std::pair<long long, unsigned>> dyadics) {
  std::vector<ExactNumber> v;
  for (auto [p, q] : dyadics) v.push_back(ExactNumber::dyadic(BigInt(p), q));
  return v;
}

}  // namespace detail

inline const FElement& x0() {
  static const FElement e = from_pair({DyadicPartition::from_points(detail::nums({{0, 0}, {1, 1}, {3, 2}, {1, 0}})),
                                       DyadicPartition::from_points(detail::nums({{0, 0}, {1, 2}, {1, 1}, {1, 0}}))});
  return e;
}

inline const FElement& x1() {
  static const FElement e =
      from_pair({DyadicPartition::from_points(detail::nums({{0, 0}, {1, 1}, {3, 2}, {7, 3}, {1, 0}})),
                 DyadicPartition::from_points(detail::nums({{0, 0}, {1, 1}, {5, 3}, {3, 2}, {1, 0}}))});
  return e;
}

/// x0, x1, x0^-1, x1^-1 in that order.
inline std::vector<NamedElement> generators() {
  return {{"x0", x0()}, {"x1", x1()}, {"x0^-1", invert(x0())}, {"x1^-1", invert(x1())}};
}

/// Evaluates a word such as "x0 x1^-1 x0^2" (or "x0*x1"); the product s1 s2 ... sk
/// is s1 ∘ s2 ∘ ... ∘ sk. "id" and the empty word give the identity.
inline FElement evaluate_word(std::string_view word, const std::vector<NamedElement>& gens = generators()) {
  FElement acc;
  std::size_t i = 0;
  auto find_gen = [&](std::string_view name) -> const FElement& {
    for (const auto& g : gens) {
      if (g.name == name) return g.element;
    }
    throw Error(ErrorKind::malformed_input, "unknown generator \"" + std::string(name) + "\"");
  };
  while (i < word.size()) {
    if (word[i] == ' ' || word[i] == '*' || word[i] == '\t') {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < word.size() && word[j] != ' ' && word[j] != '*' && word[j] != '\t') ++j;
    const std::string_view tok = word.substr(i, j - i);
    i = j;
    if (tok == "id" || tok == "e") continue;
    if (auto named = std::find_if(gens.begin(), gens.end(), [&](const NamedElement& g) { return g.name == tok; });
        named != gens.end()) {
      acc = compose(acc, named->element);
      continue;
    }
    const auto caret = tok.find('^');
    const std::string_view base = tok.substr(0, caret);
    long power = 1;
    if (caret != std::string_view::npos) {
      const std::string exp_text(tok.substr(caret + 1));
      std::size_t used = 0;
      try {
        power = std::stol(exp_text, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != exp_text.size() || exp_text.empty()) {
        throw Error(ErrorKind::malformed_input, "bad exponent in \"" + std::string(tok) + "\"");
      }
    }
    const FElement& g = find_gen(base);
    const FElement step = power < 0 ? invert(g) : g;
    for (long k = 0; k < (power < 0 ? -power : power); ++k) acc = compose(acc, step);
  }
  return acc;
}

}  // namespace thompson
