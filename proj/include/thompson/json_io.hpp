#pragma once

// JSON encodings. Every rational is an exact "p/q" string; nothing is ever
// written as a float.
//
//   MarkedSet      ["0","1/2","1"]
//   FElement       {"breaks": [["0","0"],["1/2","1/4"],...]}
//   PartitionPair  {"domain": [...], "range": [...]}
//   FiniteMeasure  [{"partition": [...], "weight": "1/4"}, ...]
//   IntervalChain  [["1/4","3/8"],["5/8","7/8"]]
//
// Families are JSON lines: one MarkedSet or one FElement per line.

#include <istream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "thompson/diagnostics.hpp"
#include "thompson/error.hpp"
#include "thompson/exact_number.hpp"
#include "thompson/felement.hpp"
#include "thompson/folner.hpp"
#include "thompson/partition.hpp"

namespace thompson::io {

using json = nlohmann::json;

inline json encode(const ExactNumber& x) { return x.str(); }

inline json encode(const BigInt& x) { return x.str(); }

inline json encode(const MarkedSet& x) {
  json arr = json::array();
  for (const auto& p : x.points()) arr.push_back(p.str());
  return arr;
}

inline json encode(const DyadicPartition& t) { return encode(t.marked()); }

inline json encode(const FElement& f) {
  json breaks = json::array();
  for (const auto& b : f.breaks()) breaks.push_back(json::array({b.x.str(), b.y.str()}));
  return json{{"breaks", std::move(breaks)}};
}

inline json encode(const PartitionPair& p) { return json{{"domain", encode(p.domain)}, {"range", encode(p.range)}}; }

inline json encode(const FolnerReport& r) {
  json gens = json::array();
  for (const auto& g : r.per_generator) {
    gens.push_back(json{{"generator", g.generator}, {"count", g.count}, {"defect", g.defect.str()}});
  }
  return json{{"family_size", r.family_size},
              {"side", std::string(to_string(r.side))},
              {"generators", std::move(gens)},
              {"max_defect", r.max_defect.str()}};
}

inline json encode(const Verdict& v) {
  json j{{"verdict", v.pass ? "PASS" : "FAIL"}, {"max_defect", v.max_defect.str()}, {"epsilon", v.epsilon.str()}};
  if (v.mesh_ok) j["mesh_ok"] = *v.mesh_ok;
  return j;
}

inline json encode(const ReductionReport& r) {
  json ids = json::array();
  for (const auto& c : r.identities) {
    ids.push_back(json{{"generator", c.generator}, {"holds", c.holds}, {"lhs_size", c.lhs_size}, {"rhs_size", c.rhs_size}});
  }
  return json{{"family_size", r.family_size},
              {"element_count", r.element_count},
              {"collisions", r.collisions},
              {"post_action_max_mesh", r.post_action_max_mesh.str()},
              {"post_action_mesh_ok", r.post_action_mesh_ok},
              {"set_identities", std::move(ids)}};
}

inline json encode(const ReductionBound& b) {
  return json{{"generator", b.generator}, {"element_defect", b.element_defect.str()}, {"bound", b.bound.str()}, {"holds", b.holds}};
}

inline json encode(const TowerVerdict& v) {
  return json{{"n", v.n},
              {"bound", v.bound ? json(v.bound->str()) : json(nullptr)},
              {"observed_size", v.observed_size},
              {"consistent", v.consistent}};
}

inline json encode(const FiniteMeasure& mu) {
  json arr = json::array();
  for (const auto& a : mu.atoms()) arr.push_back(json{{"partition", encode(a.partition)}, {"weight", a.weight.str()}});
  return arr;
}

inline json encode(const IntervalChain& c) {
  json arr = json::array();
  for (const auto& [lo, hi] : c.intervals()) arr.push_back(json::array({lo.str(), hi.str()}));
  return arr;
}

namespace detail {

[[noreturn]] inline void bad(const std::string& what) { throw Error(ErrorKind::malformed_input, what); }

inline const std::string& as_string(const json& j, const char* what) {
  if (!j.is_string()) bad(std::string(what) + " must be a string");
  return j.get_ref<const std::string&>();
}

}  // namespace detail

inline ExactNumber decode_number(const json& j) { return parse_number(detail::as_string(j, "number")); }

inline ExactNumber decode_coordinate(const json& j) { return parse_coordinate(detail::as_string(j, "coordinate")); }

inline MarkedSet decode_marked_set(const json& j) {
  if (!j.is_array()) detail::bad("marked set must be an array of number strings");
  std::vector<ExactNumber> pts;
  pts.reserve(j.size());
  for (const auto& e : j) pts.push_back(decode_coordinate(e));
  const std::size_t n = pts.size();
  MarkedSet x = MarkedSet::from_points(std::move(pts));
  if (x.size() != n) detail::bad("marked set has repeated points");
  return x;
}

inline DyadicPartition decode_partition(const json& j) { return DyadicPartition::from_marked(decode_marked_set(j)); }

inline FElement decode_element(const json& j) {
  if (!j.is_object() || !j.contains("breaks") || !j.at("breaks").is_array()) detail::bad("element must be {\"breaks\": [...]}");
  std::vector<Breakpoint> breaks;
  for (const auto& b : j.at("breaks")) {
    if (!b.is_array() || b.size() != 2) detail::bad("breakpoint must be a pair of number strings");
    breaks.push_back({decode_coordinate(b[0]), decode_coordinate(b[1])});
  }
  return FElement::from_breaks(std::move(breaks));
}

inline PartitionPair decode_pair(const json& j) {
  if (!j.is_object() || !j.contains("domain") || !j.contains("range")) detail::bad("pair must have domain and range");
  return {decode_partition(j.at("domain")), decode_partition(j.at("range"))};
}

inline FiniteMeasure decode_measure(const json& j) {
  if (!j.is_array()) detail::bad("measure must be an array of atoms");
  std::vector<FiniteMeasure::Atom> atoms;
  for (const auto& a : j) {
    if (!a.is_object() || !a.contains("partition") || !a.contains("weight")) detail::bad("atom needs partition and weight");
    atoms.push_back({decode_partition(a.at("partition")), decode_number(a.at("weight"))});
  }
  return FiniteMeasure::from_atoms(std::move(atoms));
}

inline IntervalChain decode_chain(const json& j) {
  if (!j.is_array()) detail::bad("chain must be an array of intervals");
  std::vector<IntervalChain::Interval> out;
  for (const auto& iv : j) {
    if (!iv.is_array() || iv.size() != 2) detail::bad("interval must be a pair of number strings");
    out.emplace_back(decode_coordinate(iv[0]), decode_coordinate(iv[1]));
  }
  return IntervalChain::from_intervals(std::move(out));
}

/// Named generator table: {"x0": {...}, "x1": {...}, "x0^-1": {...}, "x1^-1": {...}}.
inline std::vector<NamedElement> decode_generators(const json& j) {
  std::vector<NamedElement> out;
  for (const char* name : {"x0", "x1", "x0^-1", "x1^-1"}) {
    if (!j.is_object() || !j.contains(name)) detail::bad(std::string("generator table lacks ") + name);
    out.push_back({name, decode_element(j.at(name))});
  }
  return out;
}

inline json encode_generators(const std::vector<NamedElement>& gens) {
  json j = json::object();
  for (const auto& g : gens) j[g.name] = encode(g.element);
  return j;
}

inline json parse_json(std::istream& in) {
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    detail::bad(std::string("invalid JSON: ") + e.what());
  }
}

using Family = std::variant<MarkedFamily, ElementSet>;

/// One MarkedSet or FElement per line; blank lines are skipped, kinds may not mix.
inline Family read_family_lines(std::istream& in) {
  MarkedFamily marked;
  ElementSet elems;
  bool any_marked = false;
  bool any_elems = false;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      detail::bad("line " + std::to_string(lineno) + ": invalid JSON");
    }
    if (j.is_array()) {
      any_marked = true;
      marked.insert(decode_marked_set(j));
    } else {
      any_elems = true;
      elems.insert(decode_element(j));
    }
  }
  if (any_marked && any_elems) detail::bad("family mixes marked sets and elements");
  if (!any_marked && !any_elems) throw Error(ErrorKind::empty_family, "family file has no members");
  if (any_marked) return marked;
  return elems;
}

inline std::string write_family_lines(const MarkedFamily& z) {
  std::string out;
  for (const auto& x : z) out += encode(x).dump() + "\n";
  return out;
}

inline std::string write_family_lines(const ElementSet& a) {
  std::string out;
  for (const auto& [k, f] : a) out += encode(f).dump() + "\n";
  return out;
}

}  // namespace thompson::io
