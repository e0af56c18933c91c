#include "thompson/felement.hpp"

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "thompson/diagnostics.hpp"
#include "thompson/random.hpp"

namespace thompson {
namespace {

ExactNumber q(long long p, long long d) { return ExactNumber(BigInt(p), BigInt(d)); }

DyadicPartition dp(std::initializer_list<ExactNumber> pts) { return DyadicPartition::from_points(pts); }

template <class Fn>
void expect_error(ErrorKind kind, Fn&& fn) {
  try {
    fn();
    ADD_FAILURE() << "no error raised";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), kind) << e.what();
  }
}

// Pointwise comparison on the 2^-10 grid plus a few non-dyadic points.
bool agree_pointwise(const FElement& a, const FElement& b) {
  for (int k = 0; k <= 1024; ++k) {
    if (a(q(k, 1024)) != b(q(k, 1024))) return false;
  }
  for (int k = 1; k < 30; ++k) {
    if (a(q(k, 30)) != b(q(k, 30))) return false;
  }
  return true;
}

TEST(FromPair, Generators) {
  const FElement& g0 = x0();
  EXPECT_EQ(g0.breaks().size(), 4u);
  EXPECT_EQ(g0.slope_exponents(), (std::vector<int>{-1, 0, 1}));
  EXPECT_EQ(from_pair({dp({0, q(1, 2), 1}), dp({0, q(1, 2), 1})}), FElement::identity());
  const FElement& g1 = x1();
  EXPECT_EQ(g1.slope_exponents(), (std::vector<int>{0, -1, 0, 1}));
  EXPECT_EQ(g1.breaks().front(), (Breakpoint{0, 0}));
  EXPECT_EQ(g1.breaks()[2], (Breakpoint{q(3, 4), q(5, 8)}));
}

TEST(FromPair, Errors) {
  expect_error(ErrorKind::cardinality_mismatch, [] { from_pair({dp({0, q(1, 2), 1}), dp({0, 1})}); });
  expect_error(ErrorKind::invalid_element, [] {
    FElement::from_breaks({{0, 0}, {q(1, 2), q(3, 8)}, {1, 1}});  // slope 3/4
  });
  expect_error(ErrorKind::invalid_element, [] { FElement::from_breaks({{0, 0}, {q(1, 3), q(1, 3)}, {1, 1}}); });
  expect_error(ErrorKind::invalid_element, [] { FElement::from_breaks({{0, 0}, {q(1, 2), q(1, 2)}}); });
  expect_error(ErrorKind::invalid_element, [] { FElement::from_breaks({{0, 0}, {q(1, 2), 0}, {1, 1}}); });
}

TEST(FromBreaks, DropsCollinearPoints) {
  const FElement f = FElement::from_breaks({{0, 0}, {q(1, 4), q(1, 4)}, {q(1, 2), q(1, 2)}, {1, 1}});
  EXPECT_TRUE(f.is_identity());
}

TEST(ToMinimalPair, Examples) {
  EXPECT_EQ(to_minimal_pair(FElement::identity()), (PartitionPair{dp({0, 1}), dp({0, 1})}));
  EXPECT_EQ(to_minimal_pair(x0()), (PartitionPair{dp({0, q(1, 2), q(3, 4), 1}), dp({0, q(1, 4), q(1, 2), 1})}));
  EXPECT_EQ(to_minimal_pair(x1()), (PartitionPair{dp({0, q(1, 2), q(3, 4), q(7, 8), 1}),
                                                  dp({0, q(1, 2), q(5, 8), q(3, 4), 1})}));
  // Frozen from the exhaustive search below.
  const PartitionPair sq{dp({0, q(1, 2), q(3, 4), q(7, 8), 1}), dp({0, q(1, 8), q(1, 4), q(1, 2), 1})};
  EXPECT_EQ(to_minimal_pair(compose(x0(), x0())), sq);
}

TEST(ToMinimalPair, AgreesWithExhaustiveSearch) {
  EXPECT_EQ(oracle::brute_force_minimal_pair(compose(x0(), x0()), 4),
            (PartitionPair{dp({0, q(1, 2), q(3, 4), q(7, 8), 1}), dp({0, q(1, 8), q(1, 4), q(1, 2), 1})}));
  for (std::uint64_t i = 0; i < 40; ++i) {
    auto rng = gen::case_rng(21, "minpair", i);
    const FElement f = gen::evaluate(gen::word(rng, 2), generators());
    const PartitionPair m = to_minimal_pair(f);
    // Every element of length <= 2 has a pair of depth <= 4.
    const auto brute = oracle::brute_force_minimal_pair(f, 4);
    ASSERT_TRUE(brute.has_value());
    ASSERT_EQ(brute->domain.size(), m.domain.size());
    ASSERT_EQ(*brute, m);
  }
}

TEST(Generators, Values) {
  const auto gens = generators();
  ASSERT_EQ(gens.size(), 4u);
  EXPECT_EQ(gens[0].name, "x0");
  EXPECT_EQ(gens[3].name, "x1^-1");
  EXPECT_EQ(x0()(q(3, 4)), q(1, 2));
  for (int k = 0; k <= 64; ++k) EXPECT_EQ(x1()(q(k, 128)), q(k, 128));
  EXPECT_EQ(x1()(q(1, 3)), q(1, 3));
  EXPECT_EQ(gens[2].element, from_pair({dp({0, q(1, 4), q(1, 2), 1}), dp({0, q(1, 2), q(3, 4), 1})}));
}

TEST(Apply, Examples) {
  EXPECT_EQ(apply(x0(), q(7, 8)), q(3, 4));
  EXPECT_EQ(apply(x0(), ExactNumber(0)), ExactNumber(0));
  EXPECT_EQ(apply(x0(), ExactNumber(1)), ExactNumber(1));
  EXPECT_EQ(apply(x1(), q(1, 3)), q(1, 3));
  EXPECT_EQ(apply(x0(), q(1, 3)), q(1, 6));
  expect_error(ErrorKind::out_of_range, [] { apply(x0(), q(3, 2)); });
  expect_error(ErrorKind::out_of_range, [] { apply(x0(), q(-1, 2)); });
}

TEST(Invert, Examples) {
  EXPECT_EQ(invert(FElement::identity()), FElement::identity());
  EXPECT_EQ(invert(invert(x1())), x1());
  EXPECT_EQ(invert(x0())(q(1, 2)), q(3, 4));
}

TEST(Compose, Examples) {
  const FElement id;
  EXPECT_EQ(compose(x0(), invert(x0())), id);
  EXPECT_EQ(compose(id, x1()), x1());
  const DyadicPartition t = dp({0, q(1, 2), q(3, 4), q(7, 8), 1});
  const DyadicPartition gt = act_partition(x0(), t);
  EXPECT_EQ(gt, dp({0, q(1, 4), q(1, 2), q(3, 4), 1}));
  const FElement lhs = compose(x0(), f_of_partition(t));
  const FElement rhs = f_of_partition(gt);
  EXPECT_TRUE(agree_pointwise(lhs, rhs));
  EXPECT_EQ(lhs, rhs);
}

TEST(Compose, MatchesPointwiseEvaluation) {
  const auto gens = generators();
  for (std::uint64_t i = 0; i < 100; ++i) {
    auto rng = gen::case_rng(22, "compose", i);
    const FElement f = gen::evaluate(gen::word(rng, 6), gens);
    const FElement g = gen::evaluate(gen::word(rng, 6), gens);
    const FElement h = compose(g, f);
    for (int k = 0; k <= 256; ++k) ASSERT_EQ(h(q(k, 256)), g(f(q(k, 256))));
    ASSERT_EQ(h(q(1, 7)), g(f(q(1, 7))));
  }
}

TEST(ActMarked, Examples) {
  const MarkedSet z = MarkedSet::from_points({0, ExactNumber(1) - q(1, 8), 1});
  EXPECT_EQ(act_marked(x0(), z), MarkedSet::from_points({0, ExactNumber(1) - q(1, 4), 1}));
  EXPECT_EQ(act_marked(FElement::identity(), z), z);
  const MarkedSet half = MarkedSet::from_points({0, q(1, 2), 1});
  EXPECT_EQ(act_marked(x1(), half), half);
  // Right action uses the inverse: X·x0 = x0^-1(X).
  EXPECT_EQ(act_marked(x0(), z, Side::right), act_marked(invert(x0()), z));
}

TEST(ActMarked, RightActionComposes) {
  const auto gens = generators();
  for (std::uint64_t i = 0; i < 50; ++i) {
    auto rng = gen::case_rng(23, "right", i);
    const MarkedSet x = gen::fine_marked_set(rng);
    const FElement g = gen::evaluate(gen::word(rng, 4), gens);
    const FElement h = gen::evaluate(gen::word(rng, 4), gens);
    // (X·g)·h = X·(gh)
    ASSERT_EQ(act_marked(h, act_marked(g, x, Side::right), Side::right), act_marked(compose(g, h), x, Side::right));
  }
}

TEST(ActPartition, Examples) {
  const FElement& g = x1();
  const PartitionPair p = to_minimal_pair(g);
  EXPECT_EQ(act_partition(g, p.domain), p.range);
  expect_error(ErrorKind::domain_not_contained, [] { act_partition(x1(), dp({0, q(1, 2), 1})); });
  EXPECT_FALSE(try_act_partition(x1(), dp({0, q(1, 2), 1})).has_value());
}

TEST(FOfPartition, Examples) {
  EXPECT_EQ(f_of_partition(dp({0, q(1, 2), q(3, 4), 1})), FElement::identity());
  EXPECT_EQ(f_of_partition(dp({0, q(1, 4), q(1, 2), 1})), x0());
  EXPECT_EQ(f_of_partition(dp({0, q(1, 2), q(5, 8), q(3, 4), 1})), x1());
  expect_error(ErrorKind::too_few_points, [] { f_of_partition(DyadicPartition::trivial()); });
}

TEST(CanonicalKey, Examples) {
  EXPECT_EQ(canonical_key(FElement::identity()), canonical_key(compose(x0(), invert(x0()))));
  EXPECT_NE(canonical_key(x0()), canonical_key(x1()));
}

TEST(CanonicalKey, InjectiveOnBallTwo) {
  const auto gens = generators();
  std::vector<FElement> elems;
  for (std::size_t a = 0; a < 4; ++a) {
    elems.push_back(gens[a].element);
    for (std::size_t b = 0; b < 4; ++b) elems.push_back(compose(gens[a].element, gens[b].element));
  }
  elems.push_back(FElement::identity());
  for (const auto& f : elems) {
    for (const auto& g : elems) {
      ASSERT_EQ(canonical_key(f) == canonical_key(g), to_minimal_pair(f) == to_minimal_pair(g));
    }
  }
}

TEST(GroupLaws, RandomWords) {
  const auto gens = generators();
  const FElement id;
  for (std::uint64_t i = 0; i < 200; ++i) {
    auto rng = gen::case_rng(24, "axioms", i);
    const FElement u = gen::evaluate(gen::word(rng, 12), gens);
    const FElement v = gen::evaluate(gen::word(rng, 12), gens);
    const FElement w = gen::evaluate(gen::word(rng, 12), gens);
    ASSERT_EQ(compose(compose(u, v), w), compose(u, compose(v, w)));
    ASSERT_EQ(compose(id, u), u);
    ASSERT_EQ(compose(u, id), u);
    ASSERT_EQ(compose(u, invert(u)), id);
    ASSERT_EQ(compose(invert(u), u), id);
  }
}

TEST(GroupLaws, ClosurePreservesInvariants) {
  const auto gens = generators();
  for (std::uint64_t i = 0; i < 200; ++i) {
    auto rng = gen::case_rng(25, "closure", i);
    const FElement u = compose(gen::evaluate(gen::word(rng, 10), gens), invert(gen::evaluate(gen::word(rng, 10), gens)));
    // Re-validating through from_breaks checks dyadic points, power-of-two slopes and canonical form.
    ASSERT_EQ(FElement::from_breaks(u.breaks()), u);
    for (std::size_t k = 1; k < u.slope_exponents().size(); ++k) {
      ASSERT_NE(u.slope_exponents()[k], u.slope_exponents()[k - 1]);
    }
  }
}

TEST(GroupLaws, DefiningRelations) {
  const FElement id;
  EXPECT_EQ(evaluate_word("x0 x1^-1 x0^-1 x1 x0 x1 x0^-1 x0^-1 x1^-1 x0"), id);
  EXPECT_EQ(evaluate_word("x0 x1^-1 x0^-2 x1 x0^2 x1 x0^-1 x0^-2 x1^-1 x0^2"), id);
  EXPECT_NE(evaluate_word("x0 x1"), evaluate_word("x1 x0"));
}

TEST(EvaluateWord, Syntax) {
  EXPECT_EQ(evaluate_word("x0*x0"), compose(x0(), x0()));
  EXPECT_EQ(evaluate_word("x0^2"), compose(x0(), x0()));
  EXPECT_EQ(evaluate_word("id"), FElement::identity());
  EXPECT_EQ(evaluate_word(""), FElement::identity());
  EXPECT_EQ(evaluate_word("x1^-1"), invert(x1()));
  expect_error(ErrorKind::malformed_input, [] { evaluate_word("x2"); });
  expect_error(ErrorKind::malformed_input, [] { evaluate_word("x0^a"); });
}

TEST(Claims, ConjugationOfFT) {
  const auto gens = generators();
  for (std::uint64_t i = 0; i < 300; ++i) {
    auto rng = gen::case_rng(26, "claim1", i);
    const auto& g = gens[i % 4];
    const DyadicPartition t = gen::partition_containing(rng, to_minimal_pair(g.element).domain, 24);
    const DyadicPartition gt = act_partition(g.element, t);
    ASSERT_TRUE(is_standard(gt.marked()));
    ASSERT_EQ(compose(g.element, f_of_partition(t)), f_of_partition(gt));
  }
}

TEST(Claims, TOfIsEquivariant) {
  const auto gens = generators();
  for (std::uint64_t i = 0; i < 300; ++i) {
    auto rng = gen::case_rng(27, "claim2", i);
    const MarkedSet x = gen::fine_marked_set(rng);
    const auto& g = gens[i % 4].element;
    ASSERT_EQ(act_partition(g, t_of(x)), t_of(act_marked(g, x)));
  }
}

TEST(PairRoundTrip, RandomTreePairs) {
  for (std::uint64_t i = 0; i < 200; ++i) {
    auto rng = gen::case_rng(28, "pairs", i);
    const PartitionPair p = gen::tree_pair(rng);
    const FElement f = from_pair(p);
    const PartitionPair m = to_minimal_pair(f);
    ASSERT_EQ(from_pair(m), f);
    ASSERT_LE(m.domain.size(), p.domain.size());
    ASSERT_EQ(to_minimal_pair(from_pair(m)), m);
  }
}

}  // namespace
}  // namespace thompson
