#pragma once

// Command-line front end. run_cli() is the whole program; tools/thompson.cpp
// only forwards argv. Output is always JSON (or JSON lines for families)
// with exact number strings.
//
// Exit codes: 0 success/PASS, 1 property or certificate FAIL,
// 2 input error, 3 precondition violation.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "thompson/diagnostics.hpp"
#include "thompson/error.hpp"
#include "thompson/exact_number.hpp"
#include "thompson/felement.hpp"
#include "thompson/folner.hpp"
#include "thompson/json_io.hpp"
#include "thompson/partition.hpp"
#include "thompson/verify.hpp"

namespace thompson::cli {

using io::json;

enum ExitCode : int { ok = 0, failed = 1, input_error = 2, precondition = 3 };

inline int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::mesh_too_large:
    case ErrorKind::domain_not_contained:
    case ErrorKind::too_few_points:
    case ErrorKind::tower_too_tall:
    case ErrorKind::radius_too_large:
      return precondition;
    default:
      return input_error;
  }
}

/// Result of one command: an exit code and the text to write.
struct Outcome {
  int code = ok;
  std::string text;
};

inline Outcome json_outcome(const json& j, int code = ok) { return {code, j.dump(2) + "\n"}; }

struct RunConfig {
  std::uint64_t seed = 1;
  std::size_t cases = 200;
  std::string epsilon = "1/10";
  std::optional<std::string> constant_c;
  std::string side = "left";
  std::string input;
  std::string output;
  unsigned max_radius = default_max_radius;
  unsigned threads = 1;
  std::string generators;
};

namespace detail {

inline std::ifstream open_input(const std::string& path) {
  if (path.empty()) throw Error(ErrorKind::malformed_input, "--input is required");
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::malformed_input, "cannot open " + path);
  return in;
}

inline json read_json_file(const std::string& path) {
  auto in = open_input(path);
  return io::parse_json(in);
}

inline Side parse_side(const std::string& s) {
  if (s == "left") return Side::left;
  if (s == "right") return Side::right;
  throw Error(ErrorKind::malformed_input, "side must be left or right");
}

inline std::vector<NamedElement> generator_table(const RunConfig& cfg) {
  if (cfg.generators.empty()) return generators();
  return io::decode_generators(read_json_file(cfg.generators));
}

}  // namespace detail

inline Outcome cmd_verify(const RunConfig& cfg) {
  verify::Config vc;
  vc.seed = cfg.seed;
  vc.cases = cfg.cases;
  vc.threads = cfg.threads;
  vc.gens = detail::generator_table(cfg);
  const verify::Report rep = verify::run_all(vc);
  return json_outcome(verify::encode(rep), rep.passed() ? ok : failed);
}

inline Outcome cmd_tof(const RunConfig& cfg) {
  const MarkedSet x = io::decode_marked_set(detail::read_json_file(cfg.input));
  const DyadicPartition t = t_of(x);
  return json_outcome(json{{"input", io::encode(x)},
                           {"t_of", io::encode(t)},
                           {"mesh", mesh(t).str()},
                           {"is_standard", is_standard(t.marked())},
                           {"leaf_condition", satisfies_leaf_condition(t, x)}});
}

inline Outcome cmd_reduce(const RunConfig& cfg) {
  auto in = detail::open_input(cfg.input);
  const io::Family fam = io::read_family_lines(in);
  const auto* z = std::get_if<MarkedFamily>(&fam);
  if (!z) throw Error(ErrorKind::malformed_input, "reduce expects a family of marked sets");
  const ExactNumber eps = parse_number(cfg.epsilon);
  const auto gens = detail::generator_table(cfg);
  const ExactNumber m = mesh_max(*z);
  if (mesh_bound() < m) {
    return json_outcome(json{{"family_size", z->size()},
                             {"mesh_max", m.str()},
                             {"mesh_bound", mesh_bound().str()},
                             {"error", "MeshTooLarge"}},
                        precondition);
  }
  const ReductionAudit a = audit_reduction(*z, eps, gens, cfg.threads);
  json bounds = json::array();
  for (const auto& b : a.bounds) bounds.push_back(io::encode(b));
  const bool pass = a.marked_verdict.pass && a.element_verdict.pass;
  return json_outcome(json{{"mesh_max", a.family_mesh.str()},
                           {"marked_defect", io::encode(a.marked)},
                           {"reduction", io::encode(a.reduction.report)},
                           {"element_defect", io::encode(a.elements)},
                           {"defect_bounds", std::move(bounds)},
                           {"certificate", json{{"marked", io::encode(a.marked_verdict)},
                                                {"elements", io::encode(a.element_verdict)},
                                                {"verdict", pass ? "PASS" : "FAIL"}}}},
                      pass ? ok : failed);
}

inline Outcome cmd_defect(const RunConfig& cfg) {
  auto in = detail::open_input(cfg.input);
  const io::Family fam = io::read_family_lines(in);
  const Side side = detail::parse_side(cfg.side);
  const ExactNumber eps = parse_number(cfg.epsilon);
  const auto gens = detail::generator_table(cfg);
  FolnerReport rep;
  Verdict v;
  std::string kind;
  if (const auto* z = std::get_if<MarkedFamily>(&fam)) {
    kind = "marked";
    rep = defect_marked(*z, gens, side, cfg.threads);
    v = folner_certificate(rep, eps, mesh_max(*z));
  } else {
    kind = "elements";
    rep = defect_elements(std::get<ElementSet>(fam), gens, side, cfg.threads);
    v = folner_certificate(rep, eps);
  }
  return json_outcome(json{{"family", kind}, {"report", io::encode(rep)}, {"certificate", io::encode(v)}},
                      v.pass ? ok : failed);
}

inline Outcome cmd_zfamily(const std::vector<std::uint64_t>& members, std::optional<std::uint64_t> count) {
  std::set<std::uint64_t> a(members.begin(), members.end());
  if (count) {
    for (std::uint64_t k = 0; k < *count; ++k) a.insert(k);
  }
  return {ok, io::write_family_lines(z_family(a))};
}

inline Outcome cmd_ball(const RunConfig& cfg, unsigned radius, bool with_elements, std::ostream& err) {
  const ExactNumber c = parse_number(cfg.constant_c.value_or("2"));
  if (!cfg.constant_c) err << "notice: --constant-c not given; using C = 2\n";
  const auto gens = detail::generator_table(cfg);
  const BallEnumeration b = ball_enumeration(radius, cfg.max_radius, cfg.threads, gens);
  const FolnerReport rep = defect_elements(b.elements, gens, detail::parse_side(cfg.side), cfg.threads);
  const TowerVerdict tv = tower_check(b.elements.size(), rep.max_defect, c);
  json out{{"radius", radius},
           {"size", b.elements.size()},
           {"sphere_sizes", b.sphere_sizes},
           {"defect", io::encode(rep)},
           {"constant_c", c.str()},
           {"tower_check", io::encode(tv)}};
  if (with_elements) {
    json elems = json::array();
    for (const auto& [key, f] : b.elements) {
      elems.push_back(json{{"word", b.witness.at(key)}, {"element", io::encode(f)}});
    }
    out["elements"] = std::move(elems);
  }
  return json_outcome(out);
}

inline Outcome cmd_tower(unsigned n) { return json_outcome(json{{"n", n}, {"value", tower(n).str()}}); }

inline Outcome cmd_measure_mono(const RunConfig& cfg, const std::string& chain_path) {
  const FiniteMeasure mu = io::decode_measure(detail::read_json_file(cfg.input));
  const IntervalChain chain = io::decode_chain(detail::read_json_file(chain_path));
  json defects = json::object();
  for (const auto& g : detail::generator_table(cfg)) defects[g.name] = invariance_defect(mu, g.element).str();
  return json_outcome(json{{"support_size", mu.atoms().size()},
                           {"chain", io::encode(chain)},
                           {"monotone_mass", monotonicity_mass(mu, chain).str()},
                           {"invariance_defect", std::move(defects)}});
}

inline Outcome cmd_eval(const RunConfig& cfg, const std::string& word, const std::string& point) {
  const FElement f = evaluate_word(word, detail::generator_table(cfg));
  const ExactNumber t = parse_coordinate(point);
  return json_outcome(json{{"element", word}, {"t", t.str()}, {"value", f(t).str()}});
}

inline Outcome cmd_compose(const RunConfig& cfg, const std::string& g_word, const std::string& f_word) {
  const auto gens = detail::generator_table(cfg);
  const FElement r = compose(evaluate_word(g_word, gens), evaluate_word(f_word, gens));
  return json_outcome(json{{"g", g_word},
                           {"f", f_word},
                           {"result", io::encode(r)},
                           {"pair", io::encode(to_minimal_pair(r))},
                           {"key", canonical_key(r)}});
}

inline constexpr const char* verify_help =
    "Runs every property suite with a seeded generator.\n"
    "Each case draws from mt19937_64 seeded by splitmix64(splitmix64(seed ^ fnv1a(suite)) + case).\n"
    "Mesh <= 1/16 marked sets come from two generators, chosen with equal odds:\n"
    "  grid-plus-extras: {k/16 : 0 <= k <= 16} plus 0..16 extra points p/2^q,\n"
    "                    q uniform in 1..10, p uniform in 1..2^q-1;\n"
    "  walk: from 0, steps k/1024 with k uniform in 1..64 (one step in eight\n"
    "        scaled by 2/3), stopping before 1.\n"
    "Suites: claim1, claim2, claim3 (--cases each), tof_maximality (cases/5),\n"
    "proposition (cases/10 families), zfamily, relations, group_axioms and\n"
    "pair_roundtrip (cases/2).";

/// Parses argv, runs one subcommand, writes its output; returns the exit code.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact-arithmetic audit tool for Thompson's group F and Følner candidates"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  app.add_option("--seed", cfg.seed, "seed for randomized suites");
  app.add_option("--cases", cfg.cases, "cases per property suite");
  app.add_option("--epsilon", cfg.epsilon, "certificate threshold (exact, e.g. 1/10)");
  app.add_option("--constant-c", cfg.constant_c, "constant C of the tower-growth check (default 2)");
  app.add_option("--side", cfg.side, "action side: left or right")->check(CLI::IsMember({"left", "right"}));
  app.add_option("--input", cfg.input, "input file");
  app.add_option("--output", cfg.output, "output file (default stdout)");
  app.add_option("--max-radius", cfg.max_radius, "largest ball radius accepted");
  app.add_option("--threads", cfg.threads, "worker threads; output does not depend on this");
  app.add_option("--generators", cfg.generators, "JSON generator table replacing x0, x1 and inverses");

  auto* verify_cmd = app.add_subcommand("verify", "run all property suites");
  verify_cmd->footer(verify_help);
  app.add_subcommand("tof", "maximal standard partition T(X) of a marked set (--input)");
  app.add_subcommand("reduce", "mesh check, audits and reduction of a marked family (--input, JSON lines)");
  app.add_subcommand("defect", "Følner defect of a family of marked sets or elements (--input, JSON lines)");

  auto* zfam = app.add_subcommand("zfamily", "family {0, 1-2^-(n+2), 1} as JSON lines");
  std::optional<std::uint64_t> zcount;
  std::vector<std::uint64_t> zmembers;
  zfam->add_option("count", zcount, "use n = 0..count-1");
  zfam->add_option("--members", zmembers, "explicit indices")->delimiter(',');

  auto* ball_cmd = app.add_subcommand("ball", "ball of radius r, its defect and tower check");
  unsigned radius = 0;
  bool with_elements = false;
  ball_cmd->add_option("radius", radius)->required();
  ball_cmd->add_flag("--elements", with_elements, "list elements with witness words");

  auto* tower_cmd = app.add_subcommand("tower", "exp_n(0)");
  unsigned tower_n = 0;
  tower_cmd->add_option("n", tower_n)->required();

  auto* mono = app.add_subcommand("measure-mono", "monotone mass and invariance defects of a measure (--input)");
  std::string chain_path;
  mono->add_option("--chain", chain_path, "interval chain file")->required();

  auto* eval_cmd = app.add_subcommand("eval", "image of a point under a word");
  std::string eval_word;
  std::string eval_point;
  eval_cmd->add_option("word", eval_word)->required();
  eval_cmd->add_option("t", eval_point)->required();

  auto* comp = app.add_subcommand("compose", "g ∘ f for two words");
  std::string g_word;
  std::string f_word;
  comp->add_option("g", g_word)->required();
  comp->add_option("f", f_word)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return ok;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
      return ok;
    }
    err << e.what() << "\n";
    return input_error;
  }

  Outcome result;
  try {
    const std::string name = app.get_subcommands().front()->get_name();
    if (name == "verify") result = cmd_verify(cfg);
    else if (name == "tof") result = cmd_tof(cfg);
    else if (name == "reduce") result = cmd_reduce(cfg);
    else if (name == "defect") result = cmd_defect(cfg);
    else if (name == "zfamily") result = cmd_zfamily(zmembers, zcount);
    else if (name == "ball") result = cmd_ball(cfg, radius, with_elements, err);
    else if (name == "tower") result = cmd_tower(tower_n);
    else if (name == "measure-mono") result = cmd_measure_mono(cfg, chain_path);
    else if (name == "eval") result = cmd_eval(cfg, eval_word, eval_point);
    else if (name == "compose") result = cmd_compose(cfg, g_word, f_word);
  } catch (const Error& e) {
    err << json{{"error", std::string(to_string(e.kind()))}, {"message", e.what()}}.dump() << "\n";
    return exit_code_for(e.kind());
  }

  if (cfg.output.empty()) {
    out << result.text;
  } else {
    std::ofstream f(cfg.output);
    if (!f) {
      err << "cannot write " << cfg.output << "\n";
      return input_error;
    }
    f << result.text;
  }
  return result.code;
}

}  // namespace thompson::cli
