#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "irvm/ballot.hpp"
#include "irvm/search.hpp"

namespace irvm {

/// A set of party codes. Codes are upper-cased and kept sorted. A complement
/// coalition stands for every party outside the listed ones.
class Coalition {
 public:
  Coalition() = default;
  Coalition(std::vector<std::string> parties, bool complement = false);

  /// "alp+clp" -> {ALP, CLP}; a leading '!' builds the complement.
  static Coalition parse(std::string_view text);

  /// "ALP+CLP", or "!LIB+NAT" for a complement.
  std::string key() const;
  bool contains(std::string_view party) const;
  Coalition complement() const { return Coalition(parties_, !complement_); }

  const std::vector<std::string>& parties() const { return parties_; }
  bool is_complement() const { return complement_; }

  friend bool operator==(const Coalition&, const Coalition&) = default;

 private:
  std::vector<std::string> parties_;
  bool complement_ = false;
};

/// Margins for one seat. A nullopt movc entry means no candidate of that
/// coalition stands in the seat.
struct SeatRecord {
  std::string seat;
  int num_candidates = 0;
  std::string winner;
  std::string winner_party;
  std::int64_t lrm = 0;
  std::int64_t mov = 0;
  std::map<std::string, std::optional<std::int64_t>> movc_by_target;

  friend bool operator==(const SeatRecord&, const SeatRecord&) = default;
};

enum class ScenarioMode { LoseMajority, WinMajority };

struct ChosenSeat {
  std::string seat;
  std::int64_t changes = 0;

  friend bool operator==(const ChosenSeat&, const ChosenSeat&) = default;
};

struct ParliamentScenario {
  ScenarioMode mode = ScenarioMode::LoseMajority;
  Coalition coalition;
  std::int64_t threshold = 0;
  std::int64_t seats_held = 0;
  std::int64_t seats_needed = 0;
  std::vector<ChosenSeat> chosen_seats;
  std::int64_t total_changes = 0;
  /// Win mode only: the coalition already holds the threshold.
  bool already_winning = false;
};

/// Seats needed to govern: ceil((num_seats + 1) / 2).
std::int64_t threshold(std::int64_t num_seats);

/// Cheapest way to leave `coalition` below `threshold` seats: the W - T + 1
/// coalition seats with the smallest change counts. A seat's count is its
/// `movc:!KEY` value when the record carries one, otherwise its MOV.
/// Throws CoalitionLacksMajority when W < T.
ParliamentScenario seats_to_lose_majority(const std::vector<SeatRecord>& records,
                                          const Coalition& coalition, std::int64_t threshold);

/// Cheapest way to bring `coalition` up to `threshold` seats: the T - W'
/// non-coalition seats with the smallest `movc:KEY` values. Seats where the
/// coalition fields no candidate are skipped. Throws MissingMovc when a
/// record lacks the column. Returns an empty scenario when W' >= T.
ParliamentScenario seats_to_win(const std::vector<SeatRecord>& records,
                                const Coalition& coalition, std::int64_t threshold);

/// Seat-record CSV:
///
///   seat,num_candidates,lrm,mov,winner,winner_party[,movc:<KEY>...]
///
/// A movc cell of `-` marks an unreachable target.
std::vector<SeatRecord> parse_seat_records(std::string_view text);
std::vector<SeatRecord> load_seat_records(const std::string& path);
std::string serialize_seat_records(const std::vector<SeatRecord>& records);

/// Counts the seat, computes its MOV and one MOVC per target coalition.
SeatRecord analyze_seat(const std::string& seat, const Profile& profile,
                        const std::vector<Coalition>& targets, const SearchOptions& options = {});

}  // namespace irvm
