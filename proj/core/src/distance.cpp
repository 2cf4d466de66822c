#include "irvm/distance.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

#include "irvm/error.hpp"

namespace irvm {

EliminationSequence::EliminationSequence(std::vector<CandidateIndex> order, int num_candidates)
    : order_(std::move(order)), num_candidates_(num_candidates) {
  for (auto c : order_) {
    if (c < 0 || c >= num_candidates_) throw std::invalid_argument("candidate out of range");
    if (members_.contains(c)) throw std::invalid_argument("duplicate candidate in sequence");
    members_.insert(c);
  }
}

int EliminationSequence::position(CandidateIndex c) const {
  if (!members_.contains(c)) return -1;
  return static_cast<int>(std::find(order_.begin(), order_.end(), c) - order_.begin());
}

EliminationSequence EliminationSequence::prepend(CandidateIndex c) const {
  std::vector<CandidateIndex> next;
  next.reserve(order_.size() + 1);
  next.push_back(c);
  next.insert(next.end(), order_.begin(), order_.end());
  return EliminationSequence(std::move(next), num_candidates_);
}

namespace {

ChainMask chain_of(const std::vector<CandidateIndex>& ranking,
                   const std::vector<int>& position_of) {
  ChainMask mask = 0;
  int last = -1;
  for (auto c : ranking) {
    const int p = position_of[c];
    if (p > last) {
      mask |= ChainMask{1} << p;
      last = p;
    }
  }
  return mask;
}

std::vector<int> positions(const EliminationSequence& seq) {
  std::vector<int> pos(seq.num_candidates(), -1);
  for (int i = 0; i < seq.size(); ++i) pos[seq[i]] = i;
  return pos;
}

}  // namespace

std::vector<CandidateIndex> project_type(const std::vector<CandidateIndex>& ranking,
                                         const EliminationSequence& sequence) {
  std::vector<CandidateIndex> out;
  const auto mask = project_chain(ranking, sequence);
  for (ChainMask b = mask; b != 0; b &= b - 1) out.push_back(sequence[std::countr_zero(b)]);
  return out;
}

ChainMask project_chain(const std::vector<CandidateIndex>& ranking,
                        const EliminationSequence& sequence) {
  return chain_of(ranking, positions(sequence));
}

int chain_credit(ChainMask t, int round) {
  const ChainMask rest = t & ~((ChainMask{1} << round) - 1);
  return rest == 0 ? -1 : std::countr_zero(rest);
}

std::int64_t Manipulation::size() const {
  std::int64_t n = 0;
  for (const auto& b : removed) n += b.count;
  return n;
}

Profile apply_manipulation(const Profile& profile, const Manipulation& manipulation) {
  std::map<std::vector<CandidateIndex>, std::int64_t> counts;
  for (const auto& b : profile.ballots()) counts[b.ranking] += b.count;
  for (const auto& b : manipulation.removed) {
    auto it = counts.find(b.ranking);
    if (it == counts.end() || it->second < b.count) {
      throw ProfileError("manipulation removes more '" + profile.format_ranking(b.ranking) +
                         "' ballots than the profile holds");
    }
    it->second -= b.count;
  }
  for (const auto& b : manipulation.added) counts[b.ranking] += b.count;

  std::vector<Ballot> ballots;
  for (auto& [ranking, count] : counts) {
    if (count > 0) ballots.push_back(Ballot{ranking, count});
  }
  return Profile(profile.candidates(), std::move(ballots), profile.parties());
}

DistanceModel::DistanceModel(EliminationSequence sequence, std::vector<std::int64_t> type_counts)
    : sequence_(std::move(sequence)), type_counts_(std::move(type_counts)) {
  if (sequence_.size() < 1 || sequence_.size() > kMaxSequenceLength) {
    throw std::invalid_argument("sequence length outside [1, " +
                                std::to_string(kMaxSequenceLength) + "]");
  }
  if (type_counts_.size() != (std::size_t{1} << sequence_.size())) {
    throw std::invalid_argument("type count vector has the wrong size");
  }
  total_ = std::accumulate(type_counts_.begin(), type_counts_.end(), std::int64_t{0});
}

std::vector<CandidateIndex> DistanceModel::chain(ChainMask t) const {
  std::vector<CandidateIndex> out;
  for (ChainMask b = t; b != 0; b &= b - 1) out.push_back(sequence_[std::countr_zero(b)]);
  return out;
}

std::int64_t DistanceModel::tally(int round, int position) const {
  std::int64_t sum = 0;
  for (ChainMask t = 0; t < type_counts_.size(); ++t) {
    if (type_counts_[t] != 0 && chain_credit(t, round) == position) sum += type_counts_[t];
  }
  return sum;
}

int DistanceModel::num_constraints() const {
  const int m = sequence_.size();
  return m * (m - 1) / 2;
}

std::vector<ChainMask> DistanceModel::addition_types() const {
  const int m = sequence_.size();
  std::vector<ChainMask> out;
  if (m == 1) {
    out.push_back(1);
    return out;
  }
  const ChainMask top = ChainMask{1} << (m - 1);
  // Subsets of the interior positions 1..m-2.
  const ChainMask interior_count = ChainMask{1} << (m - 2);
  for (ChainMask s = 0; s < interior_count; ++s) out.push_back(top | (s << 1));
  return out;
}

namespace {

std::string column_name(const char* prefix, const std::vector<CandidateIndex>& chain,
                        const Profile* names, ChainMask t) {
  std::string out = prefix;
  if (chain.empty()) return out + "exhausted";
  if (!names) return out + "t" + std::to_string(t);
  for (std::size_t i = 0; i < chain.size(); ++i) {
    if (i) out += '_';
    out += names->name(chain[i]);
  }
  return out;
}

std::string candidate_label(CandidateIndex c, const Profile* names) {
  return names ? names->name(c) : "c" + std::to_string(c);
}

}  // namespace

DistanceModel::Lp DistanceModel::to_lp(const Profile* names) const {
  Lp out;
  const int m = sequence_.size();
  for (ChainMask t = 0; t < type_counts_.size(); ++t) {
    if (type_counts_[t] > 0) {
      out.removal.push_back(t);
      out.problem.add_column(column_name("r_", chain(t), names, t), 1, 0, type_counts_[t]);
    }
  }
  if (m >= 2) out.addition = addition_types();
  for (auto t : out.addition) {
    out.problem.add_column(column_name("a_", chain(t), names, t), 0, 0, total_);
  }

  const auto nr = static_cast<int>(out.removal.size());
  for (int round = 0; round + 1 < m; ++round) {
    for (int j = round + 1; j < m; ++j) {
      lp::Row row;
      row.name = "r" + std::to_string(round + 1) + "_" + candidate_label(sequence_[round], names) +
                 "_le_" + candidate_label(sequence_[j], names);
      row.sense = lp::Sense::LessEqual;
      row.rhs = tally(round, j) - tally(round, round);
      for (int k = 0; k < nr; ++k) {
        const int credit = chain_credit(out.removal[k], round);
        if (credit == round) row.terms.push_back({k, -1});
        if (credit == j) row.terms.push_back({k, 1});
      }
      for (std::size_t k = 0; k < out.addition.size(); ++k) {
        const int credit = chain_credit(out.addition[k], round);
        const int col = nr + static_cast<int>(k);
        if (credit == round) row.terms.push_back({col, 1});
        if (credit == j) row.terms.push_back({col, -1});
      }
      out.problem.add_row(std::move(row));
    }
  }
  if (m >= 2) {
    lp::Row conserve;
    conserve.name = "conserve";
    conserve.sense = lp::Sense::Equal;
    for (int k = 0; k < nr; ++k) conserve.terms.push_back({k, 1});
    for (std::size_t k = 0; k < out.addition.size(); ++k) {
      conserve.terms.push_back({nr + static_cast<int>(k), -1});
    }
    out.problem.add_row(std::move(conserve));
  }
  return out;
}

std::string DistanceModel::to_lp_text(const Profile& names) const {
  std::string comment = "elimination order:";
  for (auto c : sequence_.order()) comment += " " + names.name(c);
  return to_lp(&names).problem.to_text(comment);
}

DistanceModel build_model(const Profile& profile, const EliminationSequence& sequence) {
  ModelBuilder builder(profile);
  return builder.build(sequence);
}

const std::vector<Ballot>& ModelBuilder::restricted(CandidateSet members) {
  auto it = cache_.find(members.bits());
  if (it != cache_.end()) return it->second;
  std::map<std::vector<CandidateIndex>, std::int64_t> merged;
  for (const auto& b : profile_.ballots()) merged[restrict_ranking(b.ranking, members)] += b.count;
  std::vector<Ballot> out;
  out.reserve(merged.size());
  for (auto& [ranking, count] : merged) out.push_back(Ballot{ranking, count});
  return cache_.emplace(members.bits(), std::move(out)).first->second;
}

DistanceModel ModelBuilder::build(const EliminationSequence& sequence) {
  if (sequence.num_candidates() != profile_.num_candidates()) {
    throw std::invalid_argument("sequence does not belong to this profile");
  }
  if (sequence.size() > kMaxSequenceLength) {
    throw std::invalid_argument("sequence longer than " + std::to_string(kMaxSequenceLength));
  }
  std::vector<std::int64_t> counts(std::size_t{1} << sequence.size(), 0);
  const auto pos = positions(sequence);
  const auto& ballots =
      sequence.complete() ? profile_.ballots() : restricted(sequence.members());
  for (const auto& b : ballots) counts[chain_of(b.ranking, pos)] += b.count;
  return DistanceModel(sequence, std::move(counts));
}

std::int64_t lower_bound(const DistanceModel& model, const DistanceOptions& options,
                         lp::Counters* counters) {
  if (model.sequence().size() < 2) return 0;
  const auto lp = model.to_lp();
  const auto bound = lp::relaxation_ceiling(lp.problem, options.arithmetic, counters);
  if (!bound) throw SolverError("distance model reported infeasible");
  return std::max<std::int64_t>(*bound, 0);
}

std::int64_t lower_bound(const Profile& profile, const EliminationSequence& sequence,
                         const DistanceOptions& options, lp::Counters* counters) {
  return lower_bound(build_model(profile, sequence), options, counters);
}

std::optional<DistanceResult> exact_distance_below(const Profile& profile,
                                                   const DistanceModel& model,
                                                   std::int64_t cutoff,
                                                   const DistanceOptions& options,
                                                   lp::Counters* counters) {
  const auto& seq = model.sequence();
  if (!seq.complete()) throw std::invalid_argument("exact distance needs a complete sequence");
  if (seq.size() < 2) {
    if (cutoff <= 0) return std::nullopt;
    return DistanceResult{};
  }
  const auto lp = model.to_lp();
  const auto solution = lp::solve_integer(lp.problem, options.arithmetic, cutoff, counters);
  if (!solution) return std::nullopt;

  DistanceResult result;
  result.value = solution->objective;
  const auto pos = positions(seq);
  const auto nr = lp.removal.size();
  for (std::size_t k = 0; k < nr; ++k) {
    auto remaining = solution->values[k];
    if (remaining == 0) continue;
    for (const auto& b : profile.ballots()) {
      if (remaining == 0) break;
      if (chain_of(b.ranking, pos) != lp.removal[k]) continue;
      const auto take = std::min(remaining, b.count);
      result.manipulation.removed.push_back(Ballot{b.ranking, take});
      remaining -= take;
    }
    if (remaining != 0) throw SolverError("removal exceeds ballots of its type");
  }
  for (std::size_t k = 0; k < lp.addition.size(); ++k) {
    const auto v = solution->values[nr + k];
    if (v > 0) result.manipulation.added.push_back(Ballot{model.chain(lp.addition[k]), v});
  }
  return result;
}

DistanceResult exact_distance(const Profile& profile, const EliminationSequence& sequence,
                              const DistanceOptions& options, lp::Counters* counters) {
  auto r = exact_distance_below(profile, build_model(profile, sequence), lp::kInfinity, options,
                                counters);
  if (!r) throw SolverError("distance model reported infeasible");
  return *r;
}

}  // namespace irvm
