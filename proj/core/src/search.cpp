#include "irvm/search.hpp"

#include <set>
#include <stdexcept>

#include "irvm/error.hpp"

namespace irvm {

Manipulation last_round_manipulation(const Profile& profile, const CountResult& count) {
  Manipulation out;
  const auto w = count.winner;
  const auto r = count.runner_up();
  const CandidateSet final_pair{w, r};
  auto remaining = last_round_margin(count);
  for (const auto& b : profile.ballots()) {
    if (remaining == 0) break;
    if (first_preference(b.ranking, final_pair) != w) continue;
    const auto take = std::min(remaining, b.count);
    auto swapped = b.ranking;
    for (auto& c : swapped) {
      if (c == w) {
        c = r;
      } else if (c == r) {
        c = w;
      }
    }
    out.removed.push_back(Ballot{b.ranking, take});
    out.added.push_back(Ballot{std::move(swapped), take});
    remaining -= take;
  }
  return out;
}

namespace {

struct Node {
  std::int64_t bound;
  EliminationSequence sequence;
};

// Smallest bound first; among equal bounds prefer longer suffixes, then the
// lexicographically smaller order.
struct NodeOrder {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound < b.bound;
    if (a.sequence.size() != b.sequence.size()) return a.sequence.size() > b.sequence.size();
    return a.sequence < b.sequence;
  }
};

}  // namespace

MarginResult compute_movc(const Profile& profile, CandidateSet alternates,
                          const SearchOptions& options) {
  if (alternates.empty()) throw EmptyAlternates();
  if (!alternates.subset_of(profile.all())) {
    throw std::invalid_argument("alternate set refers to unknown candidates");
  }
  const auto count = run_election(profile, options.tie_rule);
  if (alternates.contains(count.winner)) throw AlternateIsWinner(profile.name(count.winner));

  const int n = profile.num_candidates();
  MarginResult result;
  result.winner = count.winner;
  result.last_round_margin = last_round_margin(count);

  bool have_incumbent = false;
  std::int64_t upper = lp::kInfinity;

  // The last-round margin is an upper bound whenever its manipulation
  // actually elects an alternate.
  {
    auto manipulation = last_round_manipulation(profile, count);
    if (auto order = adversarial_order(apply_manipulation(profile, manipulation), alternates)) {
      upper = result.last_round_margin;
      result.value = upper;
      result.witness_order = EliminationSequence(std::move(*order), n);
      result.witness_manipulation = std::move(manipulation);
      have_incumbent = true;
    }
  }

  lp::Counters counters;
  const DistanceOptions distance_options{options.arithmetic};
  ModelBuilder builder(profile);

  std::set<Node, NodeOrder> frontier;
  for (auto a : alternates.members()) frontier.insert(Node{0, EliminationSequence({a}, n)});

  while (!frontier.empty()) {
    auto node = std::move(frontier.extract(frontier.begin()).value());
    if (node.bound >= upper) {
      result.stats.nodes_pruned += 1 + static_cast<std::int64_t>(frontier.size());
      break;
    }
    ++result.stats.nodes_expanded;

    for (CandidateIndex c = 0; c < n; ++c) {
      if (node.sequence.members().contains(c)) continue;
      auto child = node.sequence.prepend(c);
      const auto model = builder.build(child);
      if (child.complete()) {
        ++result.stats.ips_solved;
        auto scored = exact_distance_below(profile, model, upper, distance_options, &counters);
        if (scored) {
          upper = scored->value;
          result.value = scored->value;
          result.witness_order = std::move(child);
          result.witness_manipulation = std::move(scored->manipulation);
          have_incumbent = true;
        }
        continue;
      }
      const auto bound = lower_bound(model, distance_options, &counters);
      if (bound < upper) {
        frontier.insert(Node{bound, std::move(child)});
      } else {
        ++result.stats.nodes_pruned;
      }
    }
  }

  if (!have_incumbent) throw SolverError("margin search finished without an incumbent");
  result.stats.lps_solved = counters.lp_solves;
  result.stats.exact_fallbacks = counters.exact_fallbacks;
  return result;
}

MarginResult compute_mov(const Profile& profile, const SearchOptions& options) {
  const auto count = run_election(profile, options.tie_rule);
  return compute_movc(profile, profile.all().without(count.winner), options);
}

}  // namespace irvm
