#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "irvm/ballot.hpp"
#include "irvm/error.hpp"
#include "irvm/tabulate.hpp"

namespace irvm::testing {

inline constexpr const char* kThreeWayText =
    "# candidates: a,b,c\n"
    "55,a\n"
    "25,c>a\n"
    "41,b>c\n"
    "15,c\n";

inline Profile three_way() { return parse_profile(kThreeWayText); }

inline std::vector<CandidateIndex> ids(const Profile& p, std::initializer_list<const char*> names) {
  std::vector<CandidateIndex> out;
  for (const auto* n : names) out.push_back(p.index_of(n));
  return out;
}

/// Random desk-sized election whose official count has no tied minima.
inline Profile random_profile(std::mt19937_64& rng, int min_candidates = 3,
                              int max_candidates = 4, std::int64_t max_total = 30,
                              std::int64_t max_count = 10) {
  while (true) {
    const int n = std::uniform_int_distribution<int>(min_candidates, max_candidates)(rng);
    std::vector<Candidate> candidates;
    for (int i = 0; i < n; ++i) candidates.push_back({std::string(1, static_cast<char>('a' + i))});
    std::vector<Ballot> ballots;
    std::int64_t total = 0;
    const int kinds = std::uniform_int_distribution<int>(1, 6)(rng);
    for (int k = 0; k < kinds && total < max_total; ++k) {
      std::vector<CandidateIndex> perm(n);
      for (int i = 0; i < n; ++i) perm[i] = i;
      std::shuffle(perm.begin(), perm.end(), rng);
      perm.resize(std::uniform_int_distribution<int>(1, n)(rng));
      const auto count = std::min(std::uniform_int_distribution<std::int64_t>(1, max_count)(rng),
                                  max_total - total);
      ballots.push_back({perm, count});
      total += count;
    }
    Profile p(candidates, ballots);
    try {
      run_election(p, TieRule::FailOnTie);
      return p;
    } catch (const UnresolvedTie&) {
    }
  }
}

/// Credits each ballot to its first standing candidate along `order`, returning
/// tallies[round][candidate].
inline std::vector<std::vector<std::int64_t>> order_tallies(
    const std::vector<std::pair<std::vector<CandidateIndex>, std::int64_t>>& ballots,
    const std::vector<CandidateIndex>& order, int n) {
  std::vector<std::vector<std::int64_t>> out;
  std::vector<bool> standing(n, false);
  for (auto c : order) standing[c] = true;
  for (std::size_t round = 0; round + 1 < order.size(); ++round) {
    std::vector<std::int64_t> t(n, 0);
    for (const auto& [ranking, count] : ballots) {
      for (auto c : ranking) {
        if (standing[c]) {
          t[c] += count;
          break;
        }
      }
    }
    out.push_back(std::move(t));
    standing[order[round]] = false;
  }
  return out;
}

/// `order` is a legal elimination order when every eliminated candidate has a
/// minimal tally among those standing.
inline bool order_is_valid(
    const std::vector<std::pair<std::vector<CandidateIndex>, std::int64_t>>& ballots,
    const std::vector<CandidateIndex>& order, int n) {
  const auto t = order_tallies(ballots, order, n);
  for (std::size_t round = 0; round < t.size(); ++round) {
    for (std::size_t j = round + 1; j < order.size(); ++j) {
      if (t[round][order[round]] > t[round][order[j]]) return false;
    }
  }
  return true;
}

/// Fewest ballot rewrites after which `order` (over all candidates of the
/// profile) is a legal elimination order, by exhaustive search over rewrite
/// multisets of growing size. Rewritten ballots range over every ranking of
/// every length, so this is independent of any dominance argument.
inline std::optional<std::int64_t> brute_order_distance(const Profile& profile,
                                                        const std::vector<CandidateIndex>& order,
                                                        std::int64_t max_changes) {
  const int n = profile.num_candidates();
  std::vector<std::vector<CandidateIndex>> rankings;
  {
    // Every non-empty sequence of distinct candidates, plus the empty ballot.
    rankings.push_back({});
    std::vector<std::vector<CandidateIndex>> frontier{{}};
    for (int len = 1; len <= n; ++len) {
      std::vector<std::vector<CandidateIndex>> next;
      for (const auto& r : frontier) {
        for (CandidateIndex c = 0; c < n; ++c) {
          if (std::find(r.begin(), r.end(), c) != r.end()) continue;
          auto e = r;
          e.push_back(c);
          next.push_back(e);
          rankings.push_back(e);
        }
      }
      frontier = std::move(next);
    }
  }
  const auto& orig = profile.ballots();
  for (std::int64_t k = 0; k <= max_changes; ++k) {
    std::vector<std::int64_t> removed(orig.size(), 0);
    std::vector<std::int64_t> added(rankings.size(), 0);
    bool found = false;
    auto check = [&] {
      std::vector<std::pair<std::vector<CandidateIndex>, std::int64_t>> ballots;
      for (std::size_t i = 0; i < orig.size(); ++i) {
        if (orig[i].count > removed[i]) ballots.push_back({orig[i].ranking, orig[i].count - removed[i]});
      }
      for (std::size_t i = 0; i < rankings.size(); ++i) {
        if (added[i] > 0) ballots.push_back({rankings[i], added[i]});
      }
      return order_is_valid(ballots, order, n);
    };
    std::function<void(std::size_t, std::int64_t)> add = [&](std::size_t i, std::int64_t left) {
      if (found) return;
      if (i + 1 == rankings.size()) {
        added[i] = left;
        found = check();
        return;
      }
      for (std::int64_t v = 0; v <= left && !found; ++v) {
        added[i] = v;
        add(i + 1, left - v);
      }
      added[i] = 0;
    };
    std::function<void(std::size_t, std::int64_t)> remove = [&](std::size_t i, std::int64_t left) {
      if (found) return;
      if (i == orig.size()) {
        if (left == 0) add(0, k);
        return;
      }
      for (std::int64_t v = 0; v <= std::min(left, orig[i].count) && !found; ++v) {
        removed[i] = v;
        remove(i + 1, left - v);
      }
      removed[i] = 0;
    };
    remove(0, k);
    if (found) return k;
  }
  return std::nullopt;
}

}  // namespace irvm::testing
