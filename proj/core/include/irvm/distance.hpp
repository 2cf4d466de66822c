#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "irvm/ballot.hpp"
#include "irvm/lp.hpp"

namespace irvm {

/// A suffix of an elimination order: order()[0] is eliminated first among the
/// listed candidates and back() is the prospective winner. Complete when it
/// lists every candidate of the profile.
class EliminationSequence {
 public:
  EliminationSequence(std::vector<CandidateIndex> order, int num_candidates);

  const std::vector<CandidateIndex>& order() const { return order_; }
  int size() const { return static_cast<int>(order_.size()); }
  bool complete() const { return size() == num_candidates_; }
  int num_candidates() const { return num_candidates_; }
  CandidateIndex operator[](int position) const { return order_[position]; }
  CandidateIndex winner() const { return order_.back(); }
  CandidateSet members() const { return members_; }
  /// Position of `c` in the sequence, -1 if absent.
  int position(CandidateIndex c) const;

  /// The sequence with `c` eliminated before everything already listed.
  EliminationSequence prepend(CandidateIndex c) const;

  friend bool operator==(const EliminationSequence& a, const EliminationSequence& b) {
    return a.order_ == b.order_;
  }
  friend auto operator<=>(const EliminationSequence& a, const EliminationSequence& b) {
    return a.order_ <=> b.order_;
  }

 private:
  std::vector<CandidateIndex> order_;
  int num_candidates_;
  CandidateSet members_;
};

/// Longest sequence a distance model accepts (2^n ballot types).
inline constexpr int kMaxSequenceLength = 16;

/// Set of sequence positions; a chain is the candidates at those positions in
/// increasing order.
using ChainMask = std::uint32_t;

/// The ballot's chain under `sequence`: scan the ranking restricted to the
/// sequence's members, keeping a candidate iff its position exceeds that of
/// the last kept one. In round i the ballot counts for the first chain member
/// at position >= i, or is exhausted.
std::vector<CandidateIndex> project_type(const std::vector<CandidateIndex>& ranking,
                                         const EliminationSequence& sequence);
ChainMask project_chain(const std::vector<CandidateIndex>& ranking,
                        const EliminationSequence& sequence);

/// Position credited by chain `t` in round `round`, or -1 when exhausted.
int chain_credit(ChainMask t, int round);

/// Ballot changes, expressed on concrete rankings. Removed rankings come from
/// the profile; added rankings are chains of the target order.
struct Manipulation {
  std::vector<Ballot> removed;
  std::vector<Ballot> added;

  std::int64_t size() const;
};

/// Profile after the manipulation; throws ProfileError if a removal is not
/// backed by enough ballots.
Profile apply_manipulation(const Profile& profile, const Manipulation& manipulation);

/// Minimum-change model for realizing a sequence.
///
/// Each ballot type t (chain) has original count n_t. The adversary picks new
/// counts y_t = n_t - r_t + a_t, where r_t ballots of type t are rewritten
/// (0 <= r_t <= n_t) and a_t rewritten ballots become type t. Subject to
///   * for every round i and later position j: tally_i(seq[i]) <= tally_i(seq[j])
///     (ties go the adversary's way),
///   * sum r_t = sum a_t (ballots are rewritten, not created or destroyed),
/// minimize sum r_t. For a partial sequence, candidates outside it are
/// already eliminated and ballots are projected onto its members.
///
/// Additions are only offered to chains that skip seq[0] and end with the
/// winner: any other chain is dominated by dropping seq[0] and appending the
/// winner, which never raises the eliminated candidate's tally.
class DistanceModel {
 public:
  DistanceModel(EliminationSequence sequence, std::vector<std::int64_t> type_counts);

  const EliminationSequence& sequence() const { return sequence_; }
  /// n_t indexed by ChainMask, size 2^|sequence|.
  const std::vector<std::int64_t>& type_counts() const { return type_counts_; }
  std::int64_t total() const { return total_; }

  std::vector<CandidateIndex> chain(ChainMask t) const;
  /// Unmanipulated tally of sequence()[position] in round `round`.
  std::int64_t tally(int round, int position) const;
  int num_constraints() const;
  std::vector<ChainMask> addition_types() const;

  struct Lp {
    lp::Problem problem;
    std::vector<ChainMask> removal;   ///< column j < removal.size() is r_t
    std::vector<ChainMask> addition;  ///< following columns are a_t
  };
  /// `names` (optional) supplies candidate ids for readable column names.
  Lp to_lp(const Profile* names = nullptr) const;
  std::string to_lp_text(const Profile& names) const;

 private:
  EliminationSequence sequence_;
  std::vector<std::int64_t> type_counts_;
  std::int64_t total_ = 0;
};

DistanceModel build_model(const Profile& profile, const EliminationSequence& sequence);

/// Caches rankings restricted to each candidate subset so repeated models
/// over the same profile avoid rescanning every ballot. Not thread-safe.
class ModelBuilder {
 public:
  explicit ModelBuilder(const Profile& profile) : profile_(profile) {}
  DistanceModel build(const EliminationSequence& sequence);
  const Profile& profile() const { return profile_; }

 private:
  const std::vector<Ballot>& restricted(CandidateSet members);

  const Profile& profile_;
  std::map<std::uint64_t, std::vector<Ballot>> cache_;
};

struct DistanceOptions {
  lp::Arithmetic arithmetic = lp::Arithmetic::Certified;
};

/// ceil of the LP relaxation of the model: a lower bound on the distance of
/// every complete order ending with `sequence`.
std::int64_t lower_bound(const Profile& profile, const EliminationSequence& sequence,
                         const DistanceOptions& options = {}, lp::Counters* counters = nullptr);
std::int64_t lower_bound(const DistanceModel& model, const DistanceOptions& options = {},
                         lp::Counters* counters = nullptr);

struct DistanceResult {
  std::int64_t value = 0;
  Manipulation manipulation;
};

/// Integer optimum of the model for a complete sequence, with a witness.
DistanceResult exact_distance(const Profile& profile, const EliminationSequence& sequence,
                              const DistanceOptions& options = {},
                              lp::Counters* counters = nullptr);

/// As exact_distance, but only reports optima strictly below `cutoff`.
std::optional<DistanceResult> exact_distance_below(const Profile& profile,
                                                   const DistanceModel& model,
                                                   std::int64_t cutoff,
                                                   const DistanceOptions& options = {},
                                                   lp::Counters* counters = nullptr);

}  // namespace irvm
