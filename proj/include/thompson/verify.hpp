#pragma once

// Seeded property suites behind `thompson verify` and the acceptance tests.
// Each suite reports its case count, failure count and the first failing
// case (lowest index) in full serialized form.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "thompson/diagnostics.hpp"
#include "thompson/exact_number.hpp"
#include "thompson/felement.hpp"
#include "thompson/folner.hpp"
#include "thompson/json_io.hpp"
#include "thompson/parallel.hpp"
#include "thompson/partition.hpp"
#include "thompson/random.hpp"

namespace thompson::verify {

using io::json;

struct Config {
  std::uint64_t seed = 1;
  std::size_t cases = 200;
  unsigned threads = 1;
  std::vector<NamedElement> gens = generators();
};

struct SuiteResult {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::optional<json> counterexample;

  bool passed() const { return failures == 0; }
};

namespace detail {

// nullopt on success, otherwise a description of the failing case.
using CaseOutcome = std::optional<json>;

template <class Fn>
SuiteResult run_cases(std::string name, const Config& cfg, std::size_t cases, Fn&& check) {
  auto outcomes = parallel_map(cases, cfg.threads, [&](std::size_t i) -> CaseOutcome {
    gen::Rng rng = gen::case_rng(cfg.seed, name, i);
    try {
      return check(rng, i);
    } catch (const Error& e) {
      return json{{"case", i}, {"error", e.what()}};
    }
  });
  SuiteResult r;
  r.name = std::move(name);
  r.cases = cases;
  for (auto& o : outcomes) {
    if (!o) continue;
    if (!r.counterexample) r.counterexample = std::move(*o);
    ++r.failures;
  }
  return r;
}

inline const DyadicPartition& i_2() {
  static const DyadicPartition t = i_n(2);
  return t;
}

}  // namespace detail

/// g·T ∈ 𝒯 and g ∘ f_T = f_{g·T} for T ⊇ domain(g), |T| <= 24.
inline SuiteResult claim1(const Config& cfg, std::size_t cases) {
  return detail::run_cases("claim1", cfg, cases, [&](gen::Rng& rng, std::size_t i) -> detail::CaseOutcome {
    const auto& g = cfg.gens[gen::uniform(rng, 0, cfg.gens.size() - 1)];
    const DyadicPartition domain = to_minimal_pair(g.element).domain;
    const DyadicPartition t = gen::partition_containing(rng, domain, 24);
    auto image = try_act_partition(g.element, t);
    const bool ok = image && is_standard(image->marked()) &&
                    compose(g.element, f_of_partition(t)) == f_of_partition(*image);
    if (ok) return std::nullopt;
    return json{{"case", i}, {"generator", g.name}, {"T", io::encode(t)}};
  });
}

/// g·T(X) = T(g·X) for X with mesh <= 1/16.
inline SuiteResult claim2(const Config& cfg, std::size_t cases) {
  return detail::run_cases("claim2", cfg, cases, [&](gen::Rng& rng, std::size_t i) -> detail::CaseOutcome {
    const MarkedSet x = gen::fine_marked_set(rng);
    const auto& g = cfg.gens[gen::uniform(rng, 0, cfg.gens.size() - 1)];
    auto lhs = try_act_partition(g.element, t_of(x));
    if (lhs && *lhs == t_of(act_marked(g.element, x))) return std::nullopt;
    return json{{"case", i}, {"generator", g.name}, {"X", io::encode(x)}};
  });
}

/// mesh(X) <= 1/16 implies mesh(T(X)) <= 1/8 and {0,1/2,3/4,7/8,1} ⊆ T(X).
inline SuiteResult claim3(const Config& cfg, std::size_t cases) {
  return detail::run_cases("claim3", cfg, cases, [&](gen::Rng& rng, std::size_t i) -> detail::CaseOutcome {
    const MarkedSet x = gen::fine_marked_set(rng);
    const DyadicPartition t = t_of(x);
    if (mesh(x) <= mesh_bound() && mesh(t) <= post_action_mesh_bound() && detail::i_2().is_subset_of(t)) {
      return std::nullopt;
    }
    return json{{"case", i}, {"X", io::encode(x)}, {"T", io::encode(t)}};
  });
}

/// T(X) satisfies the leaf and all-pairs conditions and contains every
/// standard partition of depth <= 4 that satisfies the leaf condition.
inline SuiteResult tof_maximality(const Config& cfg, std::size_t cases) {
  static const std::vector<DyadicPartition> candidates = enumerate_standard_partitions(4);
  return detail::run_cases("tof_maximality", cfg, cases, [&](gen::Rng& rng, std::size_t i) -> detail::CaseOutcome {
    const MarkedSet x = gen::sparse_marked_set(rng);
    const DyadicPartition t = t_of(x);
    bool ok = satisfies_leaf_condition(t, x) && satisfies_pair_condition(t, x);
    for (const auto& c : candidates) {
      if (!ok) break;
      if (satisfies_leaf_condition(c, x) && !c.is_subset_of(t)) ok = false;
    }
    if (ok) return std::nullopt;
    return json{{"case", i}, {"X", io::encode(x)}, {"T", io::encode(t)}};
  });
}

/// A mesh <= 1/16 family of up to max_size members, partly closed under generator
/// images and partly padded with sets that share T(X) with an existing member.
inline MarkedFamily random_family(gen::Rng& rng, const std::vector<NamedElement>& gens, std::size_t max_size = 50) {
  const auto target = static_cast<std::size_t>(gen::uniform(rng, 1, max_size));
  MarkedFamily z;
  std::vector<MarkedSet> pool{gen::fine_marked_set(rng)};
  z.insert(pool.front());
  for (std::size_t attempt = 0; z.size() < target && attempt < 40 * max_size; ++attempt) {
    const auto kind = gen::uniform(rng, 0, 9);
    const MarkedSet& base = pool[gen::uniform(rng, 0, pool.size() - 1)];
    MarkedSet next = base;
    if (kind < 6) {
      next = act_marked(gens[gen::uniform(rng, 0, gens.size() - 1)].element, base);
    } else if (kind < 8) {
      std::vector<ExactNumber> pts = base.points();
      pts.push_back(gen::interior_dyadic(rng));
      next = MarkedSet::from_points(std::move(pts));
    } else {
      next = gen::fine_marked_set(rng);
    }
    if (mesh_bound() < mesh(next)) continue;
    if (z.insert(next)) pool.push_back(std::move(next));
  }
  return z;
}

/// The reduction's set identities, the post-action mesh bound, and
/// defect(𝒜) <= δ·|𝒵|/|𝒜| for every generator.
inline SuiteResult proposition(const Config& cfg, std::size_t cases) {
  return detail::run_cases("proposition", cfg, cases, [&](gen::Rng& rng, std::size_t i) -> detail::CaseOutcome {
    const MarkedFamily z = random_family(rng, cfg.gens);
    const ReductionAudit audit = audit_reduction(z, ExactNumber(1), cfg.gens);
    bool ok = audit.reduction.report.all_identities_hold() && audit.reduction.report.post_action_mesh_ok;
    for (const auto& b : audit.bounds) ok = ok && b.holds;
    if (ok) return std::nullopt;
    json members = json::array();
    for (const auto& x : z) members.push_back(io::encode(x));
    return json{{"case", i}, {"family", std::move(members)}, {"reduction", io::encode(audit.reduction.report)}};
  });
}

/// For N in {4, 16, 64}: max defect of z_family({0..N-1}) <= 4/N and every member has mesh > 1/16.
inline SuiteResult zfamily(const Config& cfg) {
  const std::vector<std::uint64_t> sizes{4, 16, 64};
  return detail::run_cases("zfamily", cfg, sizes.size(), [&](gen::Rng&, std::size_t i) -> detail::CaseOutcome {
    const std::uint64_t n = sizes[i];
    std::set<std::uint64_t> a;
    for (std::uint64_t k = 0; k < n; ++k) a.insert(k);
    const MarkedFamily z = z_family(a);
    const FolnerReport r = defect_marked(z, cfg.gens, Side::left);
    bool ok = r.max_defect <= ExactNumber(BigInt(4), BigInt(n));
    for (const auto& x : z) ok = ok && mesh_bound() < mesh(x);
    if (ok) return std::nullopt;
    return json{{"case", i}, {"N", n}, {"report", io::encode(r)}};
  });
}

/// Table consistency (g ∘ g⁻¹ = id) and the two defining relations of F.
inline SuiteResult relations(const Config& cfg) {
  const auto& t = cfg.gens;
  auto word = [&](std::string_view w) { return evaluate_word(w, t); };
  const FElement id;
  std::vector<std::pair<std::string, bool>> checks{
      {"x0 x0^-1", word("x0 x0^-1") == id},
      {"x0^-1 x0", word("x0^-1 x0") == id},
      {"x1 x1^-1", word("x1 x1^-1") == id},
      {"x1^-1 x1", word("x1^-1 x1") == id},
      // [a, b] = a b a^-1 b^-1 with a = x0 x1^-1, b = x0^-1 x1 x0
      {"[x0 x1^-1, x0^-1 x1 x0]", word("x0 x1^-1  x0^-1 x1 x0  x1 x0^-1  x0^-1 x1^-1 x0") == id},
      // b = x0^-2 x1 x0^2
      {"[x0 x1^-1, x0^-2 x1 x0^2]",
       word("x0 x1^-1  x0^-1 x0^-1 x1 x0 x0  x1 x0^-1  x0^-1 x0^-1 x1^-1 x0 x0") == id},
  };
  SuiteResult r;
  r.name = "relations";
  r.cases = checks.size();
  for (const auto& [name, ok] : checks) {
    if (ok) continue;
    ++r.failures;
    if (!r.counterexample) r.counterexample = json{{"relation", name}, {"generators", io::encode_generators(t)}};
  }
  return r;
}

/// Associativity, identity and inverse laws on random words of length <= 12.
inline SuiteResult group_axioms(const Config& cfg, std::size_t cases) {
  return detail::run_cases("group_axioms", cfg, cases, [&](gen::Rng& rng, std::size_t i) -> detail::CaseOutcome {
    const gen::Word wu = gen::word(rng, 12);
    const gen::Word wv = gen::word(rng, 12);
    const gen::Word ww = gen::word(rng, 12);
    const FElement u = gen::evaluate(wu, cfg.gens);
    const FElement v = gen::evaluate(wv, cfg.gens);
    const FElement w = gen::evaluate(ww, cfg.gens);
    const FElement id;
    const bool ok = compose(compose(u, v), w) == compose(u, compose(v, w)) && compose(id, u) == u &&
                    compose(u, id) == u && compose(u, invert(u)) == id && compose(invert(u), u) == id &&
                    compose(u, gen::evaluate(gen::inverse_word(wu), cfg.gens)) == id &&
                    canonical_key(compose(compose(u, v), w)) == canonical_key(compose(u, compose(v, w)));
    if (ok) return std::nullopt;
    return json{{"case", i},
                {"u", gen::spell(wu, cfg.gens)},
                {"v", gen::spell(wv, cfg.gens)},
                {"w", gen::spell(ww, cfg.gens)}};
  });
}

/// from_pair ∘ to_minimal_pair = id on random tree pairs, and the minimal pair is no larger.
inline SuiteResult pair_roundtrip(const Config& cfg, std::size_t cases) {
  return detail::run_cases("pair_roundtrip", cfg, cases, [&](gen::Rng& rng, std::size_t i) -> detail::CaseOutcome {
    const PartitionPair p = gen::tree_pair(rng);
    const FElement f = from_pair(p);
    const PartitionPair m = to_minimal_pair(f);
    const bool ok = from_pair(m) == f && m.domain.size() <= p.domain.size() && to_minimal_pair(from_pair(m)) == m;
    if (ok) return std::nullopt;
    return json{{"case", i}, {"pair", io::encode(p)}, {"minimal", io::encode(m)}};
  });
}

struct Report {
  std::uint64_t seed = 0;
  std::size_t cases = 0;
  std::vector<SuiteResult> suites;

  bool passed() const {
    for (const auto& s : suites) {
      if (!s.passed()) return false;
    }
    return true;
  }
};

/// All suites. Proposition runs cases/10 families (at least one).
inline Report run_all(const Config& cfg) {
  Report rep;
  rep.seed = cfg.seed;
  rep.cases = cfg.cases;
  const std::size_t n = cfg.cases;
  rep.suites.push_back(claim1(cfg, n));
  rep.suites.push_back(claim2(cfg, n));
  rep.suites.push_back(claim3(cfg, n));
  rep.suites.push_back(tof_maximality(cfg, std::max<std::size_t>(1, n / 5)));
  rep.suites.push_back(proposition(cfg, std::max<std::size_t>(1, n / 10)));
  rep.suites.push_back(zfamily(cfg));
  rep.suites.push_back(relations(cfg));
  rep.suites.push_back(group_axioms(cfg, std::max<std::size_t>(1, n / 2)));
  rep.suites.push_back(pair_roundtrip(cfg, std::max<std::size_t>(1, n / 2)));
  return rep;
}

inline json encode(const SuiteResult& s) {
  json j{{"name", s.name}, {"cases", s.cases}, {"failures", s.failures}, {"passed", s.passed()}};
  if (s.counterexample) j["counterexample"] = *s.counterexample;
  return j;
}

inline json encode(const Report& r) {
  json suites = json::array();
  for (const auto& s : r.suites) suites.push_back(encode(s));
  return json{{"seed", r.seed}, {"cases", r.cases}, {"suites", std::move(suites)}, {"passed", r.passed()}};
}

}  // namespace thompson::verify
