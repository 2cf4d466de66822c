#include <gtest/gtest.h>

#include <random>

#include "irvm/error.hpp"
#include "irvm/tabulate.hpp"
#include "support.hpp"

namespace irvm {
namespace {

TEST(Tabulate, ThreeWayCount) {
  const auto p = testing::three_way();
  const auto r = run_election(p);
  ASSERT_EQ(r.rounds.size(), 2U);
  EXPECT_EQ(r.rounds[0].tallies.votes, (std::vector<std::int64_t>{55, 41, 40}));
  EXPECT_EQ(r.rounds[0].eliminated, p.index_of("c"));
  EXPECT_EQ(r.rounds[1].tallies.votes, (std::vector<std::int64_t>{80, 41, 0}));
  EXPECT_EQ(r.rounds[1].tallies.exhausted, 15);
  EXPECT_EQ(r.winner, p.index_of("a"));
  EXPECT_EQ(r.runner_up(), p.index_of("b"));
  EXPECT_EQ(last_round_margin(r), 20);
  EXPECT_EQ(r.elimination_order, testing::ids(p, {"c", "b", "a"}));
}

TEST(Tabulate, TwoCandidates) {
  const auto p = parse_profile("# candidates: a,b\n3,a\n2,b\n");
  const auto r = run_election(p);
  EXPECT_EQ(r.winner, 0);
  EXPECT_EQ(last_round_margin(r), 1);
}

TEST(Tabulate, TiesFailUnlessLexicographic) {
  const auto p = parse_profile("# candidates: a,b,c\n3,a\n2,b\n2,c>b\n");
  EXPECT_THROW(run_election(p), UnresolvedTie);
  const auto r = run_election(p, TieRule::Lexicographic);
  EXPECT_EQ(r.rounds[0].eliminated, p.index_of("b"));
  EXPECT_EQ(r.winner, p.index_of("a"));
}

TEST(Tabulate, NeedsTwoCandidates) {
  EXPECT_THROW(parse_profile("# candidates: a\n4,a\n"), Error);
}

TEST(Tabulate, AdversarialOrderUsesTies) {
  const auto p = parse_profile("# candidates: a,b,c\n3,a\n2,b\n2,c>b\n");
  // Dropping c instead of b hands c's ballots to b.
  const auto order = adversarial_order(p, CandidateSet{p.index_of("b")});
  ASSERT_TRUE(order.has_value());
  EXPECT_EQ(*order, testing::ids(p, {"c", "a", "b"}));
  EXPECT_FALSE(adversarial_order(p, CandidateSet{p.index_of("c")}).has_value());
  EXPECT_FALSE(adversarial_order(testing::three_way(), CandidateSet{1, 2}).has_value());
}

TEST(Tabulate, TallyConservesBallots) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 50; ++i) {
    const auto p = testing::random_profile(rng);
    const auto r = run_election(p);
    for (const auto& round : r.rounds) EXPECT_EQ(round.tallies.sum() + round.tallies.exhausted, p.total());
  }
}

}  // namespace
}  // namespace irvm
