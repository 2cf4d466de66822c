#include "irvm/oracle.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>

#include "irvm/error.hpp"
#include "irvm/tabulate.hpp"

namespace irvm {

namespace {

using TallyKey = std::pair<std::uint64_t, std::vector<std::int64_t>>;

CandidateSet winners_from(const Profile& profile, CandidateSet standing,
                          std::map<TallyKey, CandidateSet>& memo) {
  if (standing.size() == 1) return standing;
  auto t = tally(profile, standing);
  TallyKey key{standing.bits(), t.votes};
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  auto lowest = std::numeric_limits<std::int64_t>::max();
  for (auto c : standing.members()) lowest = std::min(lowest, t[c]);
  CandidateSet out;
  for (auto c : standing.members()) {
    if (t[c] == lowest) out = out | winners_from(profile, standing.without(c), memo);
  }
  memo.emplace(std::move(key), out);
  return out;
}

// Per target order: which sigma position each ranking counts for in each round.
struct OrderTable {
  std::vector<CandidateIndex> sigma;
  std::vector<std::vector<int>> original;  // [ranking][round]
  std::vector<std::vector<int>> addition;  // [family member][round]
  std::vector<std::vector<CandidateIndex>> addition_rankings;
};

std::vector<int> credits(const std::vector<CandidateIndex>& ranking,
                         const std::vector<CandidateIndex>& sigma) {
  const int n = static_cast<int>(sigma.size());
  std::vector<int> out(n - 1, -1);
  CandidateSet standing;
  for (auto c : sigma) standing.insert(c);
  for (int round = 0; round + 1 < n; ++round) {
    if (auto c = first_preference(ranking, standing)) {
      out[round] = static_cast<int>(std::find(sigma.begin(), sigma.end(), *c) - sigma.begin());
    }
    standing.erase(sigma[round]);
  }
  return out;
}

}  // namespace

CandidateSet adversarial_winners(const Profile& profile) {
  std::map<TallyKey, CandidateSet> memo;
  return winners_from(profile, profile.all(), memo);
}

std::optional<std::int64_t> oracle_movc(const Profile& profile, CandidateSet alternates,
                                        const OracleConfig& config) {
  if (alternates.empty()) throw EmptyAlternates();
  const int n = profile.num_candidates();
  if (n > config.max_candidates) {
    throw OracleCapExceeded("oracle limited to " + std::to_string(config.max_candidates) +
                            " candidates");
  }
  const auto& ballots = profile.ballots();
  if (static_cast<int>(ballots.size()) > config.max_distinct_types) {
    throw OracleCapExceeded("oracle limited to " + std::to_string(config.max_distinct_types) +
                            " distinct rankings");
  }
  if (config.max_changes < 0) throw OracleCapExceeded("negative change cap");

  if (!(adversarial_winners(profile) & alternates).empty()) return 0;

  std::vector<OrderTable> orders;
  {
    std::vector<CandidateIndex> sigma(n);
    std::iota(sigma.begin(), sigma.end(), 0);
    do {
      if (!alternates.contains(sigma.back())) continue;
      OrderTable table;
      table.sigma = sigma;
      for (const auto& b : ballots) table.original.push_back(credits(b.ranking, sigma));
      const int interior = std::max(n - 2, 0);
      for (int s = 0; s < (1 << interior); ++s) {
        std::vector<CandidateIndex> ranking;
        for (int p = 1; p + 1 < n; ++p) {
          if (s & (1 << (p - 1))) ranking.push_back(sigma[p]);
        }
        ranking.push_back(sigma.back());
        table.addition.push_back(credits(ranking, sigma));
        table.addition_rankings.push_back(std::move(ranking));
      }
      orders.push_back(std::move(table));
    } while (std::next_permutation(sigma.begin(), sigma.end()));
  }

  const int rounds = n - 1;
  const auto types = ballots.size();
  const auto cap = std::min(config.max_changes, profile.total());

  for (std::int64_t k = 1; k <= cap; ++k) {
    std::vector<std::int64_t> removed(types, 0);
    std::vector<std::int64_t> added;
    std::vector<std::int64_t> base(static_cast<std::size_t>(rounds) * n);
    std::vector<std::int64_t> work(base.size());
    const OrderTable* found_order = nullptr;

    // Does some addition multiset of size `left` over the family make the
    // order valid on top of `base`?
    std::function<bool(const OrderTable&, std::size_t, std::int64_t)> add_rec =
        [&](const OrderTable& table, std::size_t member, std::int64_t left) -> bool {
      if (member + 1 == table.addition.size()) {
        added[member] = left;
        std::copy(base.begin(), base.end(), work.begin());
        for (std::size_t f = 0; f < table.addition.size(); ++f) {
          if (added[f] == 0) continue;
          for (int r = 0; r < rounds; ++r) {
            const int p = table.addition[f][r];
            if (p >= 0) work[r * n + p] += added[f];
          }
        }
        for (int r = 0; r < rounds; ++r) {
          for (int j = r + 1; j < n; ++j) {
            if (work[r * n + r] > work[r * n + j]) return false;
          }
        }
        return true;
      }
      for (std::int64_t v = 0; v <= left; ++v) {
        added[member] = v;
        if (add_rec(table, member + 1, left - v)) return true;
      }
      return false;
    };

    std::function<bool(std::size_t, std::int64_t)> remove_rec = [&](std::size_t u,
                                                                    std::int64_t left) -> bool {
      if (u == types) {
        if (left != 0) return false;
        for (const auto& table : orders) {
          std::fill(base.begin(), base.end(), 0);
          for (std::size_t v = 0; v < types; ++v) {
            const auto kept = ballots[v].count - removed[v];
            if (kept == 0) continue;
            for (int r = 0; r < rounds; ++r) {
              const int p = table.original[v][r];
              if (p >= 0) base[r * n + p] += kept;
            }
          }
          added.assign(table.addition.size(), 0);
          if (add_rec(table, 0, k)) {
            found_order = &table;
            return true;
          }
        }
        return false;
      }
      const auto most = std::min(left, ballots[u].count);
      for (std::int64_t v = 0; v <= most; ++v) {
        removed[u] = v;
        if (remove_rec(u + 1, left - v)) return true;
      }
      removed[u] = 0;
      return false;
    };

    if (remove_rec(0, k)) {
      // Replay the manipulation on real ballots as a self-check.
      std::vector<Ballot> next;
      for (std::size_t v = 0; v < types; ++v) {
        const auto kept = ballots[v].count - removed[v];
        if (kept > 0) next.push_back(Ballot{ballots[v].ranking, kept});
      }
      for (std::size_t f = 0; f < added.size(); ++f) {
        if (added[f] > 0) next.push_back(Ballot{found_order->addition_rankings[f], added[f]});
      }
      const Profile manipulated(profile.candidates(), std::move(next), profile.parties());
      if ((adversarial_winners(manipulated) & alternates).empty()) {
        throw std::logic_error("oracle manipulation failed its replay");
      }
      return k;
    }
  }
  return std::nullopt;
}

}  // namespace irvm
