#include <gtest/gtest.h>

#include <random>

#include "irvm/error.hpp"
#include "irvm/oracle.hpp"
#include "irvm/search.hpp"
#include "support.hpp"

namespace irvm {
namespace {

bool elects_alternate(const Profile& p, const Manipulation& m, CandidateSet alternates) {
  return !(adversarial_winners(apply_manipulation(p, m)) & alternates).empty();
}

TEST(Search, ThreeWayMargins) {
  const auto p = testing::three_way();
  const auto mov = compute_mov(p);
  EXPECT_EQ(mov.value, 1);
  EXPECT_EQ(mov.winner, p.index_of("a"));
  EXPECT_EQ(mov.last_round_margin, 20);
  EXPECT_EQ(mov.witness_order.order(), testing::ids(p, {"b", "a", "c"}));
  EXPECT_TRUE(elects_alternate(p, mov.witness_manipulation, CandidateSet{1, 2}));

  const auto movc = compute_movc(p, CandidateSet{p.index_of("b")});
  EXPECT_EQ(movc.value, 10);
  EXPECT_EQ(movc.witness_order.winner(), p.index_of("b"));
  EXPECT_TRUE(elects_alternate(p, movc.witness_manipulation, CandidateSet{p.index_of("b")}));
}

TEST(Search, TrueMarginBelowLastRound) {
  const auto p = testing::three_way();
  const auto mov = compute_mov(p);
  EXPECT_LT(mov.value, mov.last_round_margin);
  EXPECT_NE(mov.value, 20);
}

TEST(Search, RejectsBadAlternates) {
  const auto p = testing::three_way();
  EXPECT_THROW(compute_movc(p, CandidateSet{}), EmptyAlternates);
  EXPECT_THROW(compute_movc(p, CandidateSet{p.index_of("a")}), AlternateIsWinner);
  EXPECT_THROW(compute_movc(p, CandidateSet{7}), std::invalid_argument);
}

TEST(Search, TwoCandidateMarginIsLastRound) {
  const auto p = parse_profile("# candidates: a,b\n3,a\n2,b\n");
  EXPECT_EQ(compute_mov(p).value, 1);
  const auto q = parse_profile("# candidates: a,b\n10,a\n3,b>a\n");
  EXPECT_EQ(compute_mov(q).value, 4);
}

TEST(Search, StatsAreReported) {
  const auto r = compute_mov(testing::three_way());
  EXPECT_GT(r.stats.nodes_expanded, 0);
  EXPECT_GT(r.stats.lps_solved, 0);
}

TEST(Search, LastRoundManipulationHasLrmSize) {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 40; ++i) {
    const auto p = testing::random_profile(rng);
    const auto count = run_election(p);
    const auto m = last_round_manipulation(p, count);
    EXPECT_EQ(m.size(), last_round_margin(count));
    const auto r = compute_mov(p);
    EXPECT_LE(r.value, r.last_round_margin);
  }
}

TEST(Search, MatchesOracle) {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 30; ++i) {
    const auto p = testing::random_profile(rng);
    const auto count = run_election(p);
    const auto others = p.all().without(count.winner);
    const auto mov = compute_mov(p);
    EXPECT_EQ(oracle_movc(p, others), mov.value) << serialize_profile(p);
    EXPECT_TRUE(elects_alternate(p, mov.witness_manipulation, others));
    for (auto c : others.members()) {
      const auto r = compute_movc(p, CandidateSet{c});
      EXPECT_EQ(oracle_movc(p, CandidateSet{c}), r.value) << serialize_profile(p);
      EXPECT_TRUE(elects_alternate(p, r.witness_manipulation, CandidateSet{c}));
    }
  }
}

TEST(Search, ArithmeticModesAgree) {
  std::mt19937_64 rng(123);
  for (int i = 0; i < 15; ++i) {
    const auto p = testing::random_profile(rng, 4, 5, 60, 15);
    const auto exact = compute_mov(p, {TieRule::FailOnTie, lp::Arithmetic::Exact}).value;
    EXPECT_EQ(compute_mov(p).value, exact);
  }
}

}  // namespace
}  // namespace irvm
