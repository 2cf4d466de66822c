#pragma once

#include <cstdint>

#include "irvm/ballot.hpp"

namespace irvm {

struct SyntheticConfig {
  int num_candidates = 8;
  std::int64_t num_ballots = 50000;
  std::uint64_t seed = 1;
  /// Chance that a ballot stops after each preference beyond the first.
  double truncation = 0.25;
};

/// Plackett-Luce ballots over candidates c1..cN with decaying support, so the
/// first two candidates are the major contenders. Same config, same profile.
Profile generate_profile(const SyntheticConfig& config);

}  // namespace irvm
