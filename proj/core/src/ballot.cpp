#include "irvm/ballot.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "irvm/error.hpp"

namespace irvm {

std::vector<CandidateIndex> CandidateSet::members() const {
  std::vector<CandidateIndex> out;
  out.reserve(size());
  for (std::uint64_t b = bits_; b != 0; b &= b - 1) out.push_back(std::countr_zero(b));
  return out;
}

namespace {

bool valid_id(std::string_view id) {
  if (id.empty()) return false;
  return id.find_first_of(",>: \t\r\n") == std::string_view::npos;
}

std::string_view trim(std::string_view s) {
  const auto* ws = " \t\r";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

Profile::Profile(std::vector<Candidate> candidates, std::vector<Ballot> ballots,
                 std::vector<std::string> parties)
    : parties_(std::move(parties)) {
  if (candidates.empty()) throw ProfileError("empty candidate roster");
  if (candidates.size() < 2) throw ProfileError("a profile needs at least 2 candidates");
  if (candidates.size() > static_cast<std::size_t>(kMaxCandidates)) {
    throw ProfileError("more than " + std::to_string(kMaxCandidates) + " candidates");
  }

  std::set<std::string> party_set(parties_.begin(), parties_.end());
  if (party_set.size() != parties_.size()) throw ProfileError("duplicate party code");
  std::sort(parties_.begin(), parties_.end());

  std::set<std::string> seen;
  for (const auto& c : candidates) {
    if (!valid_id(c.id)) throw ProfileError("invalid candidate id '" + c.id + "'");
    if (!seen.insert(c.id).second) throw ProfileError("duplicate candidate id '" + c.id + "'");
    if (c.party != "none" && !parties_.empty() && !party_set.count(c.party)) {
      throw ProfileError("candidate '" + c.id + "' has undeclared party '" + c.party + "'");
    }
  }

  const auto n = static_cast<int>(candidates.size());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return candidates[a].id < candidates[b].id; });
  std::vector<CandidateIndex> remap(n);
  for (int i = 0; i < n; ++i) {
    remap[order[i]] = i;
    candidates_.push_back(std::move(candidates[order[i]]));
  }

  std::map<std::vector<CandidateIndex>, std::int64_t> merged;
  for (auto& b : ballots) {
    if (b.count <= 0) throw ProfileError("nonpositive ballot count");
    std::uint64_t used = 0;
    for (auto& c : b.ranking) {
      if (c < 0 || c >= n) throw ProfileError("ranking refers to unknown candidate");
      const auto bit = std::uint64_t{1} << c;
      if (used & bit) throw ProfileError("duplicate candidate in ranking");
      used |= bit;
      c = remap[c];
    }
    merged[std::move(b.ranking)] += b.count;
  }
  for (auto& [ranking, count] : merged) {
    total_ += count;
    ballots_.push_back(Ballot{ranking, count});
  }
}

std::optional<CandidateIndex> Profile::find(std::string_view id) const {
  auto it = std::lower_bound(candidates_.begin(), candidates_.end(), id,
                             [](const Candidate& c, std::string_view v) { return c.id < v; });
  if (it == candidates_.end() || it->id != id) return std::nullopt;
  return static_cast<CandidateIndex>(it - candidates_.begin());
}

CandidateIndex Profile::index_of(std::string_view id) const {
  if (auto c = find(id)) return *c;
  throw ProfileError("unknown candidate '" + std::string(id) + "'");
}

std::string Profile::format_ranking(const std::vector<CandidateIndex>& ranking) const {
  std::string out;
  for (std::size_t i = 0; i < ranking.size(); ++i) {
    if (i) out += '>';
    out += name(ranking[i]);
  }
  return out;
}

std::string Profile::format_set(CandidateSet set) const {
  std::string out = "{";
  bool first = true;
  for (auto c : set.members()) {
    if (!first) out += ',';
    out += name(c);
    first = false;
  }
  return out + "}";
}

Profile parse_profile(std::string_view text) {
  std::vector<Candidate> candidates;
  std::vector<std::string> parties;
  std::map<std::string, CandidateIndex, std::less<>> ids;
  bool have_header = false;
  std::vector<Ballot> ballots;

  std::size_t line_no = 0;
  for (auto raw : split(text, '\n')) {
    ++line_no;
    const auto line = trim(raw);
    if (line.empty()) continue;

    if (line.front() == '#') {
      auto body = trim(line.substr(1));
      constexpr std::string_view kCand = "candidates:";
      constexpr std::string_view kParties = "parties:";
      if (body.starts_with(kCand)) {
        if (have_header) throw ParseError(line_no, "duplicate candidates header");
        if (!ballots.empty()) throw ParseError(line_no, "candidates header after ballot records");
        have_header = true;
        for (auto entry : split(trim(body.substr(kCand.size())), ',')) {
          entry = trim(entry);
          if (entry.empty()) continue;
          Candidate c;
          const auto colon = entry.find(':');
          c.id = std::string(trim(entry.substr(0, colon)));
          if (colon != std::string_view::npos) c.party = std::string(trim(entry.substr(colon + 1)));
          if (!valid_id(c.id)) throw ParseError(line_no, "invalid candidate id '" + c.id + "'");
          if (c.party.empty()) c.party = "none";
          if (!ids.emplace(c.id, static_cast<CandidateIndex>(candidates.size())).second) {
            throw ParseError(line_no, "duplicate candidate id '" + c.id + "'");
          }
          candidates.push_back(std::move(c));
        }
        if (candidates.empty()) throw ParseError(line_no, "empty candidate roster");
      } else if (body.starts_with(kParties)) {
        for (auto p : split(trim(body.substr(kParties.size())), ',')) {
          p = trim(p);
          if (!p.empty()) parties.emplace_back(p);
        }
      }
      continue;
    }

    if (!have_header) throw ParseError(line_no, "ballot record before '# candidates:' header");
    const auto comma = line.find(',');
    if (comma == std::string_view::npos) throw ParseError(line_no, "expected 'count,ranking'");
    const auto count_text = trim(line.substr(0, comma));
    std::int64_t count = 0;
    auto [ptr, ec] = std::from_chars(count_text.data(), count_text.data() + count_text.size(), count);
    if (ec != std::errc{} || ptr != count_text.data() + count_text.size()) {
      throw ParseError(line_no, "invalid ballot count '" + std::string(count_text) + "'");
    }
    if (count <= 0) throw ParseError(line_no, "nonpositive ballot count");

    const auto ranking_text = trim(line.substr(comma + 1));
    if (ranking_text.empty()) throw ParseError(line_no, "empty ranking");
    Ballot b;
    b.count = count;
    std::uint64_t used = 0;
    for (auto tok : split(ranking_text, '>')) {
      tok = trim(tok);
      auto it = ids.find(tok);
      if (it == ids.end()) throw ParseError(line_no, "unknown candidate '" + std::string(tok) + "'");
      const auto bit = std::uint64_t{1} << it->second;
      if (used & bit) throw ParseError(line_no, "duplicate candidate '" + std::string(tok) + "' in ranking");
      used |= bit;
      b.ranking.push_back(it->second);
    }
    ballots.push_back(std::move(b));
  }

  if (!have_header || candidates.empty()) throw ParseError(0, "empty candidate roster");
  try {
    return Profile(std::move(candidates), std::move(ballots), std::move(parties));
  } catch (const ProfileError& e) {
    throw ParseError(0, e.what());
  }
}

Profile load_profile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, "cannot open ballot file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_profile(ss.str());
}

std::string serialize_profile(const Profile& profile) {
  std::ostringstream out;
  out << "# candidates: ";
  for (std::size_t i = 0; i < profile.candidates().size(); ++i) {
    const auto& c = profile.candidates()[i];
    out << (i ? "," : "") << c.id << ':' << c.party;
  }
  out << '\n';
  if (!profile.parties().empty()) {
    out << "# parties: ";
    for (std::size_t i = 0; i < profile.parties().size(); ++i) {
      out << (i ? "," : "") << profile.parties()[i];
    }
    out << '\n';
  }
  for (const auto& b : profile.ballots()) {
    out << b.count << ',' << profile.format_ranking(b.ranking) << '\n';
  }
  return out.str();
}

std::vector<CandidateIndex> restrict_ranking(const std::vector<CandidateIndex>& ranking,
                                             CandidateSet standing) {
  std::vector<CandidateIndex> out;
  for (auto c : ranking) {
    if (standing.contains(c)) out.push_back(c);
  }
  return out;
}

std::optional<CandidateIndex> first_preference(const std::vector<CandidateIndex>& ranking,
                                               CandidateSet standing) {
  for (auto c : ranking) {
    if (standing.contains(c)) return c;
  }
  return std::nullopt;
}

}  // namespace irvm
