#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace irvm {

/// Position of a candidate in Profile::candidates(). Profiles keep candidates
/// sorted by id, so index order is id order.
using CandidateIndex = int;

inline constexpr int kMaxCandidates = 64;

/// A set of candidates of one profile, stored as a bitmask.
class CandidateSet {
 public:
  constexpr CandidateSet() = default;
  constexpr explicit CandidateSet(std::uint64_t bits) : bits_(bits) {}
  CandidateSet(std::initializer_list<CandidateIndex> members) {
    for (auto c : members) insert(c);
  }

  static constexpr CandidateSet all(int n) {
    return CandidateSet(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
  }

  constexpr bool contains(CandidateIndex c) const { return (bits_ >> c) & 1U; }
  constexpr void insert(CandidateIndex c) { bits_ |= std::uint64_t{1} << c; }
  constexpr void erase(CandidateIndex c) { bits_ &= ~(std::uint64_t{1} << c); }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::uint64_t bits() const { return bits_; }

  constexpr CandidateSet without(CandidateIndex c) const {
    return CandidateSet(bits_ & ~(std::uint64_t{1} << c));
  }
  constexpr bool subset_of(CandidateSet other) const { return (bits_ & ~other.bits_) == 0; }
  constexpr CandidateSet operator&(CandidateSet o) const { return CandidateSet(bits_ & o.bits_); }
  constexpr CandidateSet operator|(CandidateSet o) const { return CandidateSet(bits_ | o.bits_); }

  /// Members in ascending index order.
  std::vector<CandidateIndex> members() const;

  friend constexpr bool operator==(CandidateSet, CandidateSet) = default;

 private:
  std::uint64_t bits_ = 0;
};

struct Candidate {
  std::string id;
  std::string party = "none";

  friend bool operator==(const Candidate&, const Candidate&) = default;
};

/// A ranking (most preferred first) together with its multiplicity.
struct Ballot {
  std::vector<CandidateIndex> ranking;
  std::int64_t count = 1;

  friend bool operator==(const Ballot&, const Ballot&) = default;
};

/// A normalized election: candidates sorted by id, identical rankings merged,
/// ballots sorted lexicographically. Immutable once constructed.
class Profile {
 public:
  /// `ballots` index into `candidates` as given; the constructor re-indexes
  /// after sorting. Throws ProfileError on any invariant violation. Empty
  /// rankings are accepted here (manipulated profiles may contain exhausted
  /// ballots); the file parser rejects them.
  Profile(std::vector<Candidate> candidates, std::vector<Ballot> ballots,
          std::vector<std::string> parties = {});

  const std::vector<Candidate>& candidates() const { return candidates_; }
  const std::vector<Ballot>& ballots() const { return ballots_; }
  /// Declared party codes; empty when the source declared none.
  const std::vector<std::string>& parties() const { return parties_; }

  int num_candidates() const { return static_cast<int>(candidates_.size()); }
  std::int64_t total() const { return total_; }
  CandidateSet all() const { return CandidateSet::all(num_candidates()); }

  std::optional<CandidateIndex> find(std::string_view id) const;
  /// Throws ProfileError for unknown ids.
  CandidateIndex index_of(std::string_view id) const;
  const std::string& name(CandidateIndex c) const { return candidates_.at(c).id; }
  const std::string& party(CandidateIndex c) const { return candidates_.at(c).party; }

  std::string format_ranking(const std::vector<CandidateIndex>& ranking) const;
  std::string format_set(CandidateSet set) const;

  friend bool operator==(const Profile&, const Profile&) = default;

 private:
  std::vector<Candidate> candidates_;
  std::vector<Ballot> ballots_;
  std::vector<std::string> parties_;
  std::int64_t total_ = 0;
};

/// Parses the ballot file format:
///
///   # candidates: a:LIB,b:ALP,c
///   # parties: LIB,ALP          (optional)
///   55,a
///   25,c>a
///
/// Other `#` lines and blank lines are ignored.
Profile parse_profile(std::string_view text);
Profile load_profile(const std::string& path);

/// Canonical text form; parse_profile(serialize_profile(p)) == p.
std::string serialize_profile(const Profile& profile);

/// The ranking filtered to members of `standing`, order preserved.
std::vector<CandidateIndex> restrict_ranking(const std::vector<CandidateIndex>& ranking,
                                             CandidateSet standing);

/// First standing candidate on the ranking; nullopt when the ballot is exhausted.
std::optional<CandidateIndex> first_preference(const std::vector<CandidateIndex>& ranking,
                                               CandidateSet standing);

}  // namespace irvm
