#pragma once

#include <cstdint>

#include "irvm/ballot.hpp"
#include "irvm/distance.hpp"
#include "irvm/tabulate.hpp"

namespace irvm {

struct SearchStats {
  std::int64_t nodes_expanded = 0;
  std::int64_t nodes_pruned = 0;
  std::int64_t lps_solved = 0;
  std::int64_t ips_solved = 0;
  std::int64_t exact_fallbacks = 0;
};

struct MarginResult {
  std::int64_t value = 0;
  CandidateIndex winner = -1;
  std::int64_t last_round_margin = 0;
  EliminationSequence witness_order{{}, 0};
  Manipulation witness_manipulation;
  SearchStats stats;
};

struct SearchOptions {
  TieRule tie_rule = TieRule::FailOnTie;
  lp::Arithmetic arithmetic = lp::Arithmetic::Certified;
};

/// Smallest number of ballots whose rankings must change so that some member
/// of `alternates` is elected (ties resolved by the manipulator).
///
/// Best-first branch and bound over elimination-order suffixes: the frontier
/// starts with one single-candidate suffix per alternate; the node with the
/// smallest lower bound is expanded by prepending each absent candidate;
/// complete orders are scored exactly and tighten the incumbent, and nodes
/// whose bound reaches the incumbent are dropped.
///
/// Throws EmptyAlternates, AlternateIsWinner, UnresolvedTie (official count).
MarginResult compute_movc(const Profile& profile, CandidateSet alternates,
                          const SearchOptions& options = {});

/// compute_movc over every candidate except the winner.
MarginResult compute_mov(const Profile& profile, const SearchOptions& options = {});

/// The manipulation behind the last-round margin: ceil(gap / 2) ballots that
/// count for the winner in the final round get the winner and runner-up
/// swapped on their ranking.
Manipulation last_round_manipulation(const Profile& profile, const CountResult& count);

}  // namespace irvm
