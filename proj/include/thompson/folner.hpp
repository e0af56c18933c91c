#pragma once

// Følner-defect audits on F and on marked sets, the family built from subsets
// of the integers, and the reduction Z ↦ f_{T(Z)} from mesh-bounded marked
// families to finite subsets of F.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "thompson/error.hpp"
#include "thompson/exact_number.hpp"
#include "thompson/felement.hpp"
#include "thompson/parallel.hpp"
#include "thompson/partition.hpp"

namespace thompson {

/// Finite set of elements of F keyed (and ordered) by canonical key.
class ElementSet {
 public:
  using container = std::map<CanonicalKey, FElement>;

  ElementSet() = default;
  ElementSet(std::initializer_list<FElement> elems) {
    for (const auto& e : elems) insert(e);
  }

  bool insert(const FElement& f) { return items_.emplace(canonical_key(f), f).second; }
  bool insert(CanonicalKey key, FElement f) { return items_.emplace(std::move(key), std::move(f)).second; }
  bool contains(const CanonicalKey& key) const { return items_.count(key) != 0; }
  bool contains(const FElement& f) const { return contains(canonical_key(f)); }
  std::size_t size() const noexcept { return items_.size(); }
  bool empty() const noexcept { return items_.empty(); }

  auto begin() const { return items_.begin(); }
  auto end() const { return items_.end(); }

  std::vector<FElement> elements() const {
    std::vector<FElement> out;
    out.reserve(items_.size());
    for (const auto& [k, v] : items_) out.push_back(v);
    return out;
  }

  friend bool operator==(const ElementSet& a, const ElementSet& b) {
    return a.items_.size() == b.items_.size() &&
           std::equal(a.items_.begin(), a.items_.end(), b.items_.begin(),
                      [](const auto& l, const auto& r) { return l.first == r.first; });
  }

 private:
  container items_;
};

/// Finite set of marked sets, ordered lexicographically.
class MarkedFamily {
 public:
  MarkedFamily() = default;
  MarkedFamily(std::initializer_list<MarkedSet> sets) : items_(sets) {}

  bool insert(MarkedSet x) { return items_.insert(std::move(x)).second; }
  bool contains(const MarkedSet& x) const { return items_.count(x) != 0; }
  std::size_t size() const noexcept { return items_.size(); }
  bool empty() const noexcept { return items_.empty(); }
  auto begin() const { return items_.begin(); }
  auto end() const { return items_.end(); }

  std::vector<MarkedSet> members() const { return {items_.begin(), items_.end()}; }

  friend bool operator==(const MarkedFamily&, const MarkedFamily&) = default;

 private:
  std::set<MarkedSet> items_;
};

struct GeneratorDefect {
  std::string generator;
  std::size_t count = 0;  // |gA △ A|
  ExactNumber defect;     // count / |A|
};

struct FolnerReport {
  std::size_t family_size = 0;
  Side side = Side::left;
  std::vector<GeneratorDefect> per_generator;
  ExactNumber max_defect;
};

namespace detail {

template <class Key>
std::size_t symmetric_difference_size(const std::set<Key>& a, const std::set<Key>& b) {
  std::size_t n = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) {
      ++n;
      ++ia;
    } else if (*ib < *ia) {
      ++n;
      ++ib;
    } else {
      ++ia;
      ++ib;
    }
  }
  return n + static_cast<std::size_t>(std::distance(ia, a.end())) + static_cast<std::size_t>(std::distance(ib, b.end()));
}

inline FolnerReport make_report(std::size_t size, Side side, const std::vector<NamedElement>& gens,
                                const std::vector<std::size_t>& counts) {
  FolnerReport report;
  report.family_size = size;
  report.side = side;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    ExactNumber d(BigInt(counts[i]), BigInt(size));
    if (report.max_defect < d) report.max_defect = d;
    report.per_generator.push_back({gens[i].name, counts[i], std::move(d)});
  }
  return report;
}

}  // namespace detail

/// Left side: |gA △ A| with gA = {g ∘ a}. Right side: |Ag △ A| with Ag = {a ∘ g}.
inline FolnerReport defect_elements(const ElementSet& a, const std::vector<NamedElement>& gens, Side side,
                                    unsigned threads = 1) {
  if (a.empty()) throw Error(ErrorKind::empty_family, "defect of an empty element set");
  const std::vector<FElement> elems = a.elements();
  std::set<CanonicalKey> own;
  for (const auto& [k, v] : a) own.insert(own.end(), k);
  std::vector<std::size_t> counts;
  for (const auto& g : gens) {
    auto keys = parallel_map(elems.size(), threads, [&](std::size_t i) {
      return canonical_key(side == Side::left ? compose(g.element, elems[i]) : compose(elems[i], g.element));
    });
    counts.push_back(detail::symmetric_difference_size(std::set<CanonicalKey>(keys.begin(), keys.end()), own));
  }
  return detail::make_report(a.size(), side, gens, counts);
}

/// |g·Z △ Z| under act_marked with the given side convention.
inline FolnerReport defect_marked(const MarkedFamily& z, const std::vector<NamedElement>& gens, Side side,
                                  unsigned threads = 1) {
  if (z.empty()) throw Error(ErrorKind::empty_family, "defect of an empty marked family");
  const std::vector<MarkedSet> members = z.members();
  std::set<MarkedSet> own(members.begin(), members.end());
  std::vector<std::size_t> counts;
  for (const auto& g : gens) {
    auto images = parallel_map(members.size(), threads, [&](std::size_t i) { return act_marked(g.element, members[i], side); });
    counts.push_back(detail::symmetric_difference_size(std::set<MarkedSet>(images.begin(), images.end()), own));
  }
  return detail::make_report(z.size(), side, gens, counts);
}

/// {{0, 1 - 2^-(n+2), 1} : n ∈ A}.
inline MarkedFamily z_family(const std::set<std::uint64_t>& a) {
  if (a.empty()) throw Error(ErrorKind::empty_family, "z_family of an empty set");
  MarkedFamily out;
  for (std::uint64_t n : a) {
    if (n > ExactNumber::max_parse_exponent) throw Error(ErrorKind::out_of_range, "z_family index too large");
    const int e = -static_cast<int>(n) - 2;
    out.insert(MarkedSet::from_sorted_unchecked({ExactNumber(0), ExactNumber(1) - ExactNumber::pow2(e), ExactNumber(1)}));
  }
  return out;
}

inline ExactNumber mesh_max(const MarkedFamily& z) {
  if (z.empty()) throw Error(ErrorKind::empty_family, "mesh of an empty marked family");
  ExactNumber best(0);
  for (const auto& x : z) {
    ExactNumber m = mesh(x);
    if (best < m) best = std::move(m);
  }
  return best;
}

inline const ExactNumber& mesh_bound() {
  static const ExactNumber v = ExactNumber::pow2(-4);
  return v;
}

inline const ExactNumber& post_action_mesh_bound() {
  static const ExactNumber v = ExactNumber::pow2(-3);
  return v;
}

struct SetIdentityCheck {
  std::string generator;
  bool holds = false;
  std::size_t lhs_size = 0;  // |{f_{T(X)} : X ∈ g·Z}|
  std::size_t rhs_size = 0;  // |{g ∘ f_{T(Z)} : Z ∈ Z}|
};

struct ReductionReport {
  std::size_t family_size = 0;
  std::size_t element_count = 0;
  std::size_t collisions = 0;
  ExactNumber post_action_max_mesh;
  bool post_action_mesh_ok = false;
  std::vector<SetIdentityCheck> identities;

  bool all_identities_hold() const {
    return std::all_of(identities.begin(), identities.end(), [](const auto& c) { return c.holds; });
  }
};

struct Reduction {
  ElementSet elements;
  ReductionReport report;
};

/// 𝒜 = {f_{T(Z)} : Z ∈ 𝒵}, together with a check of
/// {f_{T(X)} : X ∈ g·𝒵} = {g ∘ f_{T(Z)} : Z ∈ 𝒵} for every supplied g.
inline Reduction reduce_to_f(const MarkedFamily& z, const std::vector<NamedElement>& gens = generators(),
                             unsigned threads = 1) {
  const ExactNumber m = mesh_max(z);
  if (mesh_bound() < m) throw Error(ErrorKind::mesh_too_large, "family mesh " + m.str() + " exceeds 1/16");
  const std::vector<MarkedSet> members = z.members();
  auto fs = parallel_map(members.size(), threads, [&](std::size_t i) { return f_of_partition(t_of(members[i])); });

  Reduction out;
  std::set<CanonicalKey> base_keys;
  for (const auto& f : fs) {
    CanonicalKey key = canonical_key(f);
    base_keys.insert(key);
    out.elements.insert(std::move(key), f);
  }
  auto& rep = out.report;
  rep.family_size = members.size();
  rep.element_count = out.elements.size();
  rep.collisions = rep.family_size - rep.element_count;
  rep.post_action_mesh_ok = true;

  for (const auto& g : gens) {
    struct Row {
      CanonicalKey lhs;
      CanonicalKey rhs;
      ExactNumber image_mesh;
    };
    auto rows = parallel_map(members.size(), threads, [&](std::size_t i) {
      MarkedSet image = act_marked(g.element, members[i]);
      ExactNumber image_mesh = mesh(image);
      return Row{canonical_key(f_of_partition(t_of(image))), canonical_key(compose(g.element, fs[i])),
                 std::move(image_mesh)};
    });
    std::set<CanonicalKey> lhs;
    std::set<CanonicalKey> rhs;
    for (auto& r : rows) {
      if (rep.post_action_max_mesh < r.image_mesh) rep.post_action_max_mesh = r.image_mesh;
      lhs.insert(std::move(r.lhs));
      rhs.insert(std::move(r.rhs));
    }
    rep.identities.push_back({g.name, lhs == rhs, lhs.size(), rhs.size()});
  }
  rep.post_action_mesh_ok = !(post_action_mesh_bound() < rep.post_action_max_mesh);
  return out;
}

struct Verdict {
  bool pass = false;
  ExactNumber max_defect;
  ExactNumber epsilon;
  std::optional<bool> mesh_ok;  // present for marked-family audits
};

/// PASS iff max defect < epsilon (strict).
inline Verdict folner_certificate(const FolnerReport& report, const ExactNumber& epsilon,
                                  std::optional<ExactNumber> family_mesh = std::nullopt) {
  Verdict v;
  v.max_defect = report.max_defect;
  v.epsilon = epsilon;
  v.pass = report.max_defect < epsilon;
  if (family_mesh) v.mesh_ok = !(mesh_bound() < *family_mesh);
  return v;
}

/// Per-generator check of |g𝒜 △ 𝒜|/|𝒜| ≤ δ_g·|𝒵|/|𝒜|, i.e. count_𝒜 ≤ count_𝒵.
struct ReductionBound {
  std::string generator;
  ExactNumber element_defect;
  ExactNumber bound;
  bool holds = false;
};

inline std::vector<ReductionBound> reduction_bounds(const FolnerReport& marked, const FolnerReport& elements) {
  std::vector<ReductionBound> out;
  for (std::size_t i = 0; i < marked.per_generator.size() && i < elements.per_generator.size(); ++i) {
    const auto& m = marked.per_generator[i];
    const auto& e = elements.per_generator[i];
    ExactNumber bound = m.defect * ExactNumber(BigInt(marked.family_size), BigInt(elements.family_size));
    const bool holds = !(bound < e.defect);
    out.push_back({e.generator, e.defect, std::move(bound), holds});
  }
  return out;
}

/// Mesh check, marked audit, reduction, element audit and certificates in one pass.
struct ReductionAudit {
  ExactNumber family_mesh;
  FolnerReport marked;
  Reduction reduction;
  FolnerReport elements;
  std::vector<ReductionBound> bounds;
  Verdict marked_verdict;
  Verdict element_verdict;
};

inline ReductionAudit audit_reduction(const MarkedFamily& z, const ExactNumber& epsilon,
                                      const std::vector<NamedElement>& gens = generators(), unsigned threads = 1) {
  ReductionAudit a;
  a.family_mesh = mesh_max(z);
  if (mesh_bound() < a.family_mesh) {
    throw Error(ErrorKind::mesh_too_large, "family mesh " + a.family_mesh.str() + " exceeds 1/16");
  }
  a.marked = defect_marked(z, gens, Side::left, threads);
  a.reduction = reduce_to_f(z, gens, threads);
  a.elements = defect_elements(a.reduction.elements, gens, Side::left, threads);
  a.bounds = reduction_bounds(a.marked, a.elements);
  a.marked_verdict = folner_certificate(a.marked, epsilon, a.family_mesh);
  a.element_verdict = folner_certificate(a.elements, epsilon);
  return a;
}

}  // namespace thompson
