#include "irvm/synthetic.hpp"

#include <cmath>
#include <map>
#include <random>
#include <stdexcept>

namespace irvm {

namespace {

double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1p-53; }

}  // namespace

Profile generate_profile(const SyntheticConfig& config) {
  const int n = config.num_candidates;
  if (n < 1 || n > kMaxCandidates) throw std::invalid_argument("candidate count out of range");
  if (config.num_ballots < 1) throw std::invalid_argument("need at least one ballot");

  std::vector<Candidate> candidates;
  std::vector<double> weight;
  for (int i = 0; i < n; ++i) {
    candidates.push_back(Candidate{"c" + std::to_string(i + 1), "P" + std::to_string(i + 1)});
    weight.push_back(i < 2 ? 1.0 - 0.08 * i : 0.45 / std::pow(i, 1.1));
  }

  std::mt19937_64 rng(config.seed);
  std::map<std::vector<CandidateIndex>, std::int64_t> counts;
  std::vector<CandidateIndex> ranking;
  for (std::int64_t b = 0; b < config.num_ballots; ++b) {
    ranking.clear();
    auto left = weight;
    double mass = 0;
    for (double w : left) mass += w;
    for (int k = 0; k < n; ++k) {
      if (k > 0 && unit(rng) < config.truncation) break;
      double pick = unit(rng) * mass;
      int c = 0;
      for (; c < n - 1; ++c) {
        if (left[c] == 0) continue;
        if (pick < left[c]) break;
        pick -= left[c];
      }
      while (left[c] == 0) --c;
      ranking.push_back(c);
      mass -= left[c];
      left[c] = 0;
    }
    ++counts[ranking];
  }

  std::vector<Ballot> ballots;
  for (auto& [r, count] : counts) ballots.push_back(Ballot{r, count});
  return Profile(std::move(candidates), std::move(ballots));
}

}  // namespace irvm
