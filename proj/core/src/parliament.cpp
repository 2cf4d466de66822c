#include "irvm/parliament.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "irvm/error.hpp"
#include "irvm/tabulate.hpp"

namespace irvm {

namespace {

std::string upper(std::string_view s) {
  std::string out(s);
  for (auto& ch : out) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string> split(std::string_view line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto at = line.find(sep, start);
    out.emplace_back(trim(line.substr(start, at == std::string_view::npos ? at : at - start)));
    if (at == std::string_view::npos) break;
    start = at + 1;
  }
  return out;
}

std::int64_t parse_int(const std::string& cell, std::size_t line, const char* what) {
  std::int64_t v = 0;
  const auto* end = cell.data() + cell.size();
  auto [ptr, ec] = std::from_chars(cell.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    throw ParseError(line, std::string("bad ") + what + " '" + cell + "'");
  }
  if (v < 0) throw ParseError(line, std::string("negative ") + what);
  return v;
}

// Ascending by value, then seat name.
void pick_smallest(std::vector<ChosenSeat>& pool, std::int64_t count, ParliamentScenario& out) {
  std::sort(pool.begin(), pool.end(), [](const ChosenSeat& a, const ChosenSeat& b) {
    return a.changes != b.changes ? a.changes < b.changes : a.seat < b.seat;
  });
  if (static_cast<std::int64_t>(pool.size()) < count) {
    throw Error("only " + std::to_string(pool.size()) + " seats can change hands, " +
                std::to_string(count) + " needed");
  }
  out.chosen_seats.assign(pool.begin(), pool.begin() + count);
  out.total_changes = 0;
  for (const auto& s : out.chosen_seats) out.total_changes += s.changes;
}

}  // namespace

Coalition::Coalition(std::vector<std::string> parties, bool complement) : complement_(complement) {
  std::set<std::string> unique;
  for (auto& p : parties) {
    auto code = upper(trim(p));
    if (code.empty()) throw std::invalid_argument("empty party code in coalition");
    unique.insert(std::move(code));
  }
  if (unique.empty()) throw std::invalid_argument("coalition lists no parties");
  parties_.assign(unique.begin(), unique.end());
}

Coalition Coalition::parse(std::string_view text) {
  text = trim(text);
  bool complement = false;
  if (!text.empty() && text.front() == '!') {
    complement = true;
    text.remove_prefix(1);
  }
  return Coalition(split(text, '+'), complement);
}

std::string Coalition::key() const {
  std::string out = complement_ ? "!" : "";
  for (std::size_t i = 0; i < parties_.size(); ++i) {
    if (i) out += '+';
    out += parties_[i];
  }
  return out;
}

bool Coalition::contains(std::string_view party) const {
  const bool listed = std::binary_search(parties_.begin(), parties_.end(), upper(party));
  return listed != complement_;
}

std::int64_t threshold(std::int64_t num_seats) {
  if (num_seats < 1) throw std::invalid_argument("parliament needs at least one seat");
  return (num_seats + 2) / 2;
}

ParliamentScenario seats_to_lose_majority(const std::vector<SeatRecord>& records,
                                          const Coalition& coalition, std::int64_t threshold) {
  ParliamentScenario out;
  out.mode = ScenarioMode::LoseMajority;
  out.coalition = coalition;
  out.threshold = threshold;

  const auto rival = "movc:" + coalition.complement().key();
  std::vector<ChosenSeat> pool;
  for (const auto& r : records) {
    if (!coalition.contains(r.winner_party)) continue;
    ++out.seats_held;
    auto it = r.movc_by_target.find(rival);
    if (it == r.movc_by_target.end()) {
      pool.push_back({r.seat, r.mov});
    } else if (it->second) {
      pool.push_back({r.seat, *it->second});
    }
  }
  if (out.seats_held < threshold) {
    throw CoalitionLacksMajority(coalition.key() + " holds " + std::to_string(out.seats_held) +
                                 " seats, below the threshold of " + std::to_string(threshold));
  }
  out.seats_needed = out.seats_held - threshold + 1;
  pick_smallest(pool, out.seats_needed, out);
  return out;
}

ParliamentScenario seats_to_win(const std::vector<SeatRecord>& records,
                                const Coalition& coalition, std::int64_t threshold) {
  ParliamentScenario out;
  out.mode = ScenarioMode::WinMajority;
  out.coalition = coalition;
  out.threshold = threshold;

  const auto column = "movc:" + coalition.key();
  for (const auto& r : records) {
    if (coalition.contains(r.winner_party)) ++out.seats_held;
  }
  if (out.seats_held >= threshold) {
    out.already_winning = true;
    return out;
  }
  out.seats_needed = threshold - out.seats_held;

  std::vector<ChosenSeat> pool;
  for (const auto& r : records) {
    if (coalition.contains(r.winner_party)) continue;
    auto it = r.movc_by_target.find(column);
    if (it == r.movc_by_target.end()) {
      throw MissingMovc("seat '" + r.seat + "' has no " + column + " value");
    }
    if (it->second) pool.push_back({r.seat, *it->second});
  }
  pick_smallest(pool, out.seats_needed, out);
  return out;
}

std::vector<SeatRecord> parse_seat_records(std::string_view text) {
  static const std::vector<std::string> kFixed = {"seat",   "num_candidates", "lrm",
                                                  "mov",    "winner",         "winner_party"};
  std::vector<SeatRecord> out;
  std::vector<std::string> header;
  std::set<std::string> seen;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty() || trim(line).front() == '#') continue;
    auto cells = split(line, ',');
    if (header.empty()) {
      if (cells.size() < kFixed.size() ||
          !std::equal(kFixed.begin(), kFixed.end(), cells.begin())) {
        throw ParseError(line_no, "header must start with seat,num_candidates,lrm,mov,winner,"
                                  "winner_party");
      }
      for (std::size_t i = kFixed.size(); i < cells.size(); ++i) {
        if (cells[i].rfind("movc:", 0) != 0) {
          throw ParseError(line_no, "unexpected column '" + cells[i] + "'");
        }
        cells[i] = "movc:" + Coalition::parse(cells[i].substr(5)).key();
      }
      header = std::move(cells);
      continue;
    }
    if (cells.size() != header.size()) {
      throw ParseError(line_no, "expected " + std::to_string(header.size()) + " fields, found " +
                                    std::to_string(cells.size()));
    }
    SeatRecord r;
    r.seat = cells[0];
    if (r.seat.empty()) throw ParseError(line_no, "empty seat name");
    if (!seen.insert(r.seat).second) throw ParseError(line_no, "duplicate seat '" + r.seat + "'");
    r.num_candidates = static_cast<int>(parse_int(cells[1], line_no, "candidate count"));
    r.lrm = parse_int(cells[2], line_no, "lrm");
    r.mov = parse_int(cells[3], line_no, "mov");
    r.winner = cells[4];
    r.winner_party = upper(cells[5]);
    if (r.mov > r.lrm) throw ParseError(line_no, "mov exceeds lrm");
    for (std::size_t i = kFixed.size(); i < cells.size(); ++i) {
      if (cells[i] == "-") {
        r.movc_by_target[header[i]] = std::nullopt;
      } else {
        r.movc_by_target[header[i]] = parse_int(cells[i], line_no, header[i].c_str());
      }
    }
    out.push_back(std::move(r));
  }
  if (header.empty()) throw ParseError(0, "seat-record file has no header");
  return out;
}

std::vector<SeatRecord> load_seat_records(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_seat_records(buf.str());
}

std::string serialize_seat_records(const std::vector<SeatRecord>& records) {
  std::set<std::string> columns;
  for (const auto& r : records) {
    for (const auto& [key, v] : r.movc_by_target) columns.insert(key);
  }
  std::string out = "seat,num_candidates,lrm,mov,winner,winner_party";
  for (const auto& c : columns) out += "," + c;
  out += '\n';
  for (const auto& r : records) {
    out += r.seat + "," + std::to_string(r.num_candidates) + "," + std::to_string(r.lrm) + "," +
           std::to_string(r.mov) + "," + r.winner + "," + r.winner_party;
    for (const auto& c : columns) {
      auto it = r.movc_by_target.find(c);
      out += ',';
      out += (it == r.movc_by_target.end() || !it->second) ? "-" : std::to_string(*it->second);
    }
    out += '\n';
  }
  return out;
}

SeatRecord analyze_seat(const std::string& seat, const Profile& profile,
                        const std::vector<Coalition>& targets, const SearchOptions& options) {
  const auto count = run_election(profile, options.tie_rule);
  SeatRecord r;
  r.seat = seat;
  r.num_candidates = profile.num_candidates();
  r.winner = profile.name(count.winner);
  r.winner_party = upper(profile.party(count.winner));
  r.lrm = last_round_margin(count);
  r.mov = profile.num_candidates() < 2 ? 0 : compute_mov(profile, options).value;
  for (const auto& target : targets) {
    const auto column = "movc:" + target.key();
    if (target.contains(r.winner_party)) {
      r.movc_by_target[column] = 0;
      continue;
    }
    CandidateSet alternates;
    for (CandidateIndex c = 0; c < profile.num_candidates(); ++c) {
      if (target.contains(profile.party(c))) alternates.insert(c);
    }
    if (alternates.empty()) {
      r.movc_by_target[column] = std::nullopt;
    } else {
      r.movc_by_target[column] = compute_movc(profile, alternates, options).value;
    }
  }
  return r;
}

}  // namespace irvm
