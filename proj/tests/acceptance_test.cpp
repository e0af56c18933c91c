// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "oracles.hpp"
#include "thompson/cli.hpp"
#include "thompson/diagnostics.hpp"
#include "thompson/verify.hpp"

namespace {

using namespace thompson;
using Clock = std::chrono::steady_clock;

constexpr std::uint64_t seed = 20240601;

struct Outcome {
  bool pass;
  std::string detail;
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string describe(const verify::SuiteResult& s) {
  std::string d = s.name + " " + std::to_string(s.cases - s.failures) + "/" + std::to_string(s.cases);
  if (s.counterexample) d += " first failure " + s.counterexample->dump();
  return d;
}

verify::Config config(unsigned threads) {
  verify::Config c;
  c.seed = seed;
  c.threads = threads;
  return c;
}

unsigned hw() { return std::max(1u, std::thread::hardware_concurrency()); }

Outcome claim1() {
  const auto t0 = Clock::now();
  const auto s = verify::claim1(config(1), 1000);
  const double t = seconds_since(t0);
  return {s.passed() && t < 30.0, describe(s) + ", " + std::to_string(t) + " s serial (limit 30 s)"};
}

Outcome claim2() {
  const auto s = verify::claim2(config(hw()), 1000);
  return {s.passed(), describe(s)};
}

Outcome claim3() {
  const auto s = verify::claim3(config(hw()), 1000);
  return {s.passed(), describe(s)};
}

// Uses the integer-grid tree oracle rather than the library enumeration.
Outcome tof_maximality() {
  const auto trees = oracle::all_trees(4);
  std::vector<std::vector<ExactNumber>> candidates;
  for (const auto& t : trees) candidates.push_back(oracle::to_points(t, 4));
  auto results = parallel_map(200, hw(), [&](std::size_t i) {
    auto rng = gen::case_rng(seed, "acceptance-tof", i);
    const MarkedSet x = gen::sparse_marked_set(rng);
    const auto& pts = x.points();
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
      if (pts[k + 1] - pts[k] < ExactNumber::pow2(-4)) return false;
    }
    const DyadicPartition t = t_of(x);
    if (!oracle::leaf_condition(t.points(), pts) || !satisfies_pair_condition(t, x)) return false;
    for (const auto& c : candidates) {
      if (oracle::leaf_condition(c, pts) && !oracle::subset(c, t.points())) return false;
    }
    return true;
  });
  std::size_t ok = 0;
  for (bool b : results) ok += b ? 1 : 0;
  return {ok == 200, "tof_maximality " + std::to_string(ok) + "/200 against " + std::to_string(candidates.size()) +
                         " depth-4 partitions"};
}

Outcome proposition() {
  const auto s = verify::proposition(config(hw()), 100);
  return {s.passed(), describe(s)};
}

Outcome zfamily() {
  const auto s = verify::zfamily(config(1));
  std::string d = describe(s);
  for (std::uint64_t n : {4, 16, 64}) {
    std::set<std::uint64_t> a;
    for (std::uint64_t k = 0; k < n; ++k) a.insert(k);
    d += ", N=" + std::to_string(n) + " max " + defect_marked(z_family(a), generators(), Side::left).max_defect.str();
  }
  return {s.passed(), d};
}

Outcome group_kernel() {
  const auto cfg = config(hw());
  const auto r = verify::relations(cfg);
  const auto g = verify::group_axioms(cfg, 500);
  const auto p = verify::pair_roundtrip(cfg, 500);
  return {r.passed() && g.passed() && p.passed(), describe(r) + "; " + describe(g) + "; " + describe(p)};
}

Outcome diagnostics() {
  std::ostringstream d;
  bool ok = tower(5) == BigInt(65536);
  d << "tower(5)=" << tower(5).str();
  const std::size_t b0 = ball(0).size();
  const std::size_t b1 = ball(1).size();
  const std::size_t b2 = ball(2).size();
  const std::size_t o2 = oracle::ball_by_words(2).size();
  ok = ok && b0 == 1 && b1 == 5 && b2 == o2;
  d << ", |ball(0..2)|=" << b0 << "," << b1 << "," << b2 << " oracle " << o2;
  const auto t0 = Clock::now();
  const ElementSet b6 = ball(6, default_max_radius, hw());
  const FolnerReport rep = defect_elements(b6, generators(), Side::left, hw());
  const TowerVerdict tv = tower_check(b6.size(), rep.max_defect, ExactNumber(2));
  const double t = seconds_since(t0);
  ok = ok && t < 60.0 && tv.consistent;
  d << ", |ball(6)|=" << b6.size() << " defect " << rep.max_defect << " n=" << tv.n
    << (tv.consistent ? " consistent" : " INCONSISTENT") << " in " << t << " s (limit 60 s)";
  return {ok, d.str()};
}

std::string cli_verify(const std::vector<std::string>& extra) {
  std::vector<std::string> args{"thompson", "--seed", std::to_string(seed), "--cases", "100"};
  args.insert(args.end(), extra.begin(), extra.end());
  args.push_back("verify");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return std::to_string(code) + "\n" + out.str();
}

Outcome determinism() {
  const std::string a = cli_verify({});
  const std::string b = cli_verify({});
  const std::string c = cli_verify({"--threads", std::to_string(std::max(2u, hw()))});
  const BallEnumeration s = ball_enumeration(5, default_max_radius, 1);
  const BallEnumeration p = ball_enumeration(5, default_max_radius, std::max(2u, hw()));
  const bool balls = s.elements == p.elements && s.witness == p.witness;
  return {a == b && a == c && balls, std::string("verify repeat ") + (a == b ? "identical" : "DIFFERS") +
                                         ", serial vs parallel " + (a == c ? "identical" : "DIFFERS") +
                                         ", ball(5) serial vs parallel " + (balls ? "identical" : "DIFFERS")};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 claim1: g.T standard and g o f_T = f_(g.T)", claim1},
      {"2 claim2: g.T(X) = T(g.X)", claim2},
      {"3 claim3: mesh(T(X)) <= 1/8 and I_2 in T(X)", claim3},
      {"4 T(X) maximality vs depth-4 oracle", tof_maximality},
      {"5 reduction identities and defect bound", proposition},
      {"6 integer family defect <= 4/N", zfamily},
      {"7 relations, group laws, pair round trip", group_kernel},
      {"8 tower, balls, tower check", diagnostics},
      {"9 determinism", determinism},
  };
  int failures = 0;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += o.pass ? 0 : 1;
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << " | " << o.detail << std::endl;
  }
  std::cout << (failures == 0 ? "all 9 criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
