#include "irvm/tabulate.hpp"

#include <limits>
#include <numeric>
#include <unordered_set>

#include "irvm/error.hpp"

namespace irvm {

std::int64_t TallyMap::sum() const {
  return std::accumulate(votes.begin(), votes.end(), std::int64_t{0});
}

TallyMap tally(const Profile& profile, CandidateSet standing) {
  TallyMap out;
  out.votes.assign(profile.num_candidates(), 0);
  for (const auto& b : profile.ballots()) {
    if (auto c = first_preference(b.ranking, standing)) {
      out.votes[*c] += b.count;
    } else {
      out.exhausted += b.count;
    }
  }
  return out;
}

CountResult run_election(const Profile& profile, TieRule rule) {
  CountResult result;
  if (profile.num_candidates() == 0) throw ProfileError("cannot count an election without candidates");
  auto standing = profile.all();
  while (standing.size() > 1) {
    Round round{standing, tally(profile, standing), -1};
    auto lowest = std::numeric_limits<std::int64_t>::max();
    std::vector<CandidateIndex> tied;
    for (auto c : standing.members()) {
      const auto t = round.tallies[c];
      if (t < lowest) {
        lowest = t;
        tied.assign(1, c);
      } else if (t == lowest) {
        tied.push_back(c);
      }
    }
    if (tied.size() > 1 && rule == TieRule::FailOnTie) {
      CandidateSet s;
      for (auto c : tied) s.insert(c);
      throw UnresolvedTie("round " + std::to_string(result.rounds.size() + 1) +
                          ": tied lowest tally " + std::to_string(lowest) + " among " +
                          profile.format_set(s));
    }
    round.eliminated = tied.front();
    standing.erase(round.eliminated);
    result.elimination_order.push_back(round.eliminated);
    result.rounds.push_back(std::move(round));
  }
  result.winner = standing.members().front();
  result.elimination_order.push_back(result.winner);
  return result;
}

std::int64_t last_round_margin(const CountResult& result) {
  if (result.rounds.empty()) return 0;
  const auto& last = result.rounds.back();
  auto members = last.standing.members();
  const auto diff = last.tallies[members[0]] - last.tallies[members[1]];
  const auto abs_diff = diff < 0 ? -diff : diff;
  return (abs_diff + 1) / 2;
}

namespace {

bool search_order(const Profile& profile, CandidateSet standing, CandidateSet targets,
                  std::vector<CandidateIndex>& order,
                  std::unordered_set<std::uint64_t>& dead) {
  if (standing.size() == 1) {
    const auto w = standing.members().front();
    if (!targets.contains(w)) return false;
    order.push_back(w);
    return true;
  }
  if ((standing & targets).empty() || dead.count(standing.bits())) return false;
  const auto t = tally(profile, standing);
  auto lowest = std::numeric_limits<std::int64_t>::max();
  for (auto c : standing.members()) lowest = std::min(lowest, t[c]);
  for (auto c : standing.members()) {
    if (t[c] != lowest) continue;
    order.push_back(c);
    if (search_order(profile, standing.without(c), targets, order, dead)) return true;
    order.pop_back();
  }
  dead.insert(standing.bits());
  return false;
}

}  // namespace

std::optional<std::vector<CandidateIndex>> adversarial_order(const Profile& profile,
                                                             CandidateSet targets) {
  std::vector<CandidateIndex> order;
  std::unordered_set<std::uint64_t> dead;
  if (search_order(profile, profile.all(), targets, order, dead)) return order;
  return std::nullopt;
}

}  // namespace irvm
