#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "irvm/error.hpp"
#include "irvm/parliament.hpp"
#include "support.hpp"

namespace irvm {
namespace {

std::vector<SeatRecord> nsw() { return load_seat_records(IRVM_FIXTURE_DIR "/nsw2015.csv"); }

std::vector<std::string> seat_names(const ParliamentScenario& s) {
  std::vector<std::string> out;
  for (const auto& c : s.chosen_seats) out.push_back(c.seat);
  return out;
}

TEST(Parliament, Threshold) {
  EXPECT_EQ(threshold(93), 47);
  EXPECT_EQ(threshold(1), 1);
  EXPECT_EQ(threshold(100), 51);
  EXPECT_THROW(threshold(0), std::invalid_argument);
}

TEST(Parliament, CoalitionKeys) {
  EXPECT_EQ(Coalition::parse("clp+alp").key(), "ALP+CLP");
  EXPECT_EQ(Coalition::parse("!nat+lib").key(), "!LIB+NAT");
  EXPECT_TRUE(Coalition::parse("ALP").contains("alp"));
  EXPECT_TRUE(Coalition::parse("!ALP").contains("LIB"));
  EXPECT_FALSE(Coalition::parse("!ALP").contains("ALP"));
  EXPECT_THROW(Coalition::parse("ALP++CLP"), std::invalid_argument);
}

TEST(Parliament, FixtureShape) {
  const auto r = nsw();
  ASSERT_EQ(r.size(), 93U);
  auto held = [&](const char* p) {
    const auto c = Coalition::parse(p);
    return std::count_if(r.begin(), r.end(), [&](const SeatRecord& s) { return c.contains(s.winner_party); });
  };
  EXPECT_EQ(held("LIB+NAT"), 54);
  EXPECT_EQ(held("ALP+CLP"), 34);
  EXPECT_EQ(held("ALP+CLP+GRE"), 37);
  for (const auto& s : r) {
    EXPECT_LE(s.mov, s.lrm) << s.seat;
    for (const auto& [k, v] : s.movc_by_target) {
      if (v && !Coalition::parse(k.substr(5)).contains(s.winner_party)) EXPECT_GE(*v, s.mov) << s.seat;
    }
  }
}

TEST(Parliament, LoseMajorityLibNat) {
  const auto s = seats_to_lose_majority(nsw(), Coalition::parse("LIB+NAT"), 47);
  EXPECT_EQ(s.seats_needed, 8);
  EXPECT_EQ(s.total_changes, 10398);
  EXPECT_EQ(seat_names(s), (std::vector<std::string>{"East Hills", "Lismore", "Upper Hunter", "Monaro",
                                                     "Coogee", "Tweed", "Penrith", "Holsworthy"}));
  EXPECT_EQ(s.chosen_seats.front().changes, 189);
  EXPECT_EQ(s.chosen_seats.back().changes, 2902);
}

TEST(Parliament, WinAlpClp) {
  const auto s = seats_to_win(nsw(), Coalition::parse("ALP+CLP"), 47);
  EXPECT_EQ(s.seats_needed, 13);
  EXPECT_EQ(s.total_changes, 22746);
  EXPECT_EQ(seat_names(s),
            (std::vector<std::string>{"East Hills", "Lismore", "Upper Hunter", "Monaro", "Balina", "Coogee",
                                      "Tweed", "Balmain", "Penrith", "Holsworthy", "Goulburn", "Oatley",
                                      "Newtown"}));
}

TEST(Parliament, WinAlpClpGre) {
  const auto s = seats_to_win(nsw(), Coalition::parse("GRE+ALP+CLP"), 47);
  EXPECT_EQ(s.seats_needed, 10);
  EXPECT_EQ(s.total_changes, 16349);
  EXPECT_EQ(seat_names(s), (std::vector<std::string>{"East Hills", "Lismore", "Upper Hunter", "Monaro",
                                                     "Coogee", "Tweed", "Penrith", "Holsworthy",
                                                     "Goulburn", "Oatley"}));
}

TEST(Parliament, SydneyUsesMovcNotMov) {
  auto records = nsw();
  auto sydney = std::find_if(records.begin(), records.end(), [](const SeatRecord& s) { return s.seat == "Sydney"; });
  ASSERT_NE(sydney, records.end());
  EXPECT_EQ(sydney->mov, 2864);
  EXPECT_EQ(sydney->movc_by_target.at("movc:ALP+CLP"), 5583);

  const auto coalition = Coalition::parse("ALP+CLP");
  const auto with_movc = seats_to_win(records, coalition, 47);
  sydney->movc_by_target["movc:ALP+CLP"] = sydney->mov;
  const auto with_mov = seats_to_win(records, coalition, 47);
  EXPECT_NE(seat_names(with_movc), seat_names(with_mov));
  const auto names = seat_names(with_mov);
  EXPECT_EQ(std::count(names.begin(), names.end(), "Sydney"), 1);
  EXPECT_LT(with_mov.total_changes, with_movc.total_changes);
}

TEST(Parliament, EdgeCases) {
  const auto records = nsw();
  EXPECT_THROW(seats_to_lose_majority(records, Coalition::parse("ALP+CLP"), 47), CoalitionLacksMajority);
  const auto already = seats_to_win(records, Coalition::parse("LIB+NAT"), 47);
  EXPECT_TRUE(already.already_winning);
  EXPECT_EQ(already.total_changes, 0);
  EXPECT_THROW(seats_to_win(records, Coalition::parse("GRE"), 47), MissingMovc);

  // Exactly at the threshold: one seat, the cheapest.
  const auto tight = seats_to_lose_majority(records, Coalition::parse("LIB+NAT"), 54);
  ASSERT_EQ(tight.chosen_seats.size(), 1U);
  EXPECT_EQ(tight.total_changes, 189);
}

TEST(Parliament, OrderInvariant) {
  auto records = nsw();
  const auto base = seats_to_win(records, Coalition::parse("ALP+CLP"), 47).total_changes;
  std::mt19937_64 rng(4);
  for (int i = 0; i < 5; ++i) {
    std::shuffle(records.begin(), records.end(), rng);
    EXPECT_EQ(seats_to_win(records, Coalition::parse("ALP+CLP"), 47).total_changes, base);
    EXPECT_EQ(seats_to_lose_majority(records, Coalition::parse("LIB+NAT"), 47).total_changes, 10398);
  }
}

TEST(Parliament, LoseEqualsWinForComplementWhenMovcIsMov) {
  auto records = nsw();
  const auto rival = Coalition::parse("!LIB+NAT");
  for (auto& r : records) {
    r.movc_by_target["movc:" + rival.key()] = rival.contains(r.winner_party) ? 0 : r.mov;
  }
  const auto lose = seats_to_lose_majority(records, Coalition::parse("LIB+NAT"), 47);
  const auto win = seats_to_win(records, rival, static_cast<std::int64_t>(records.size()) - 47 + 1);
  EXPECT_EQ(lose.total_changes, win.total_changes);
}

TEST(Parliament, CsvRoundTripAndErrors) {
  const auto records = nsw();
  EXPECT_EQ(parse_seat_records(serialize_seat_records(records)), records);
  auto line_of = [](const char* text) -> std::size_t {
    try {
      parse_seat_records(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 999;
  };
  EXPECT_EQ(line_of("seat,num_candidates,lrm,mov,winner,winner_party\nA,3,5,x,a,LIB\n"), 2U);
  EXPECT_EQ(line_of("seat,lrm\n"), 1U);
  EXPECT_EQ(line_of("seat,num_candidates,lrm,mov,winner,winner_party\nA,3,5,6,a,LIB\n"), 2U);
  const auto unreachable =
      parse_seat_records("seat,num_candidates,lrm,mov,winner,winner_party,movc:GRE\nA,3,5,4,a,LIB,-\n");
  EXPECT_EQ(unreachable[0].movc_by_target.at("movc:GRE"), std::nullopt);
}

TEST(Parliament, AnalyzeSeatFromBallots) {
  const auto p = parse_profile("# candidates: a:LIB,b:ALP,c:GRE\n55,a\n25,c>a\n41,b>c\n15,c\n");
  const auto r = analyze_seat("Example", p, {Coalition::parse("ALP"), Coalition::parse("!LIB"), Coalition::parse("NAT")});
  EXPECT_EQ(r.winner, "a");
  EXPECT_EQ(r.winner_party, "LIB");
  EXPECT_EQ(r.lrm, 20);
  EXPECT_EQ(r.mov, 1);
  EXPECT_EQ(r.movc_by_target.at("movc:ALP"), 10);
  EXPECT_EQ(r.movc_by_target.at("movc:!LIB"), 1);
  EXPECT_EQ(r.movc_by_target.at("movc:NAT"), std::nullopt);
}

}  // namespace
}  // namespace irvm
