#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "irvm/ballot.hpp"

namespace irvm {

/// Per-candidate tallies for one standing set. Non-standing candidates hold 0.
struct TallyMap {
  std::vector<std::int64_t> votes;
  std::int64_t exhausted = 0;

  std::int64_t operator[](CandidateIndex c) const { return votes.at(c); }
  std::int64_t sum() const;
};

TallyMap tally(const Profile& profile, CandidateSet standing);

enum class TieRule {
  FailOnTie,      ///< throw UnresolvedTie on tied minima
  Lexicographic,  ///< eliminate the tied candidate with the smallest id
};

struct Round {
  CandidateSet standing;
  TallyMap tallies;
  CandidateIndex eliminated = -1;
};

struct CountResult {
  std::vector<Round> rounds;
  CandidateIndex winner = -1;
  /// Eliminated candidates in order, followed by the winner.
  std::vector<CandidateIndex> elimination_order;

  CandidateIndex runner_up() const { return rounds.back().eliminated; }
  /// Tallies of (winner, runner-up) in the final round.
  std::int64_t winner_final_tally() const { return rounds.back().tallies[winner]; }
  std::int64_t runner_up_final_tally() const { return rounds.back().tallies[runner_up()]; }
};

/// Counts the profile one elimination per round until a single candidate stands.
CountResult run_election(const Profile& profile, TieRule rule = TieRule::FailOnTie);

/// ceil(|t(c) - t(c')| / 2) over the two candidates of the final round.
std::int64_t last_round_margin(const CountResult& result);

/// An elimination order electing a member of `targets` when every tied
/// minimum may be resolved in the caller's favour; nullopt if none exists.
std::optional<std::vector<CandidateIndex>> adversarial_order(const Profile& profile,
                                                             CandidateSet targets);

}  // namespace irvm
