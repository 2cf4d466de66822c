#pragma once

#include <cstdint>
#include <optional>

#include "irvm/ballot.hpp"

namespace irvm {

/// Guard rails for the exhaustive oracle; it is meant for desk-sized elections.
struct OracleConfig {
  std::int64_t max_changes = 30;
  int max_candidates = 4;
  int max_distinct_types = 16;
};

/// Every candidate that wins under some resolution of the tied minima met
/// during the count.
CandidateSet adversarial_winners(const Profile& profile);

/// Smallest k <= max_changes such that rewriting k ballots lets a member of
/// `alternates` win under adversarial tie resolution; nullopt above the cap.
/// Throws OracleCapExceeded when the profile is outside the configured caps.
///
/// For each target order sigma the rewritten ballots only need to range over
/// rankings that skip sigma's first candidate and end with its winner, listed
/// in sigma order: any other ranking can be replaced by one of these without
/// breaking sigma. Removals range over all sub-multisets of the profile.
std::optional<std::int64_t> oracle_movc(const Profile& profile, CandidateSet alternates,
                                        const OracleConfig& config = {});

}  // namespace irvm
