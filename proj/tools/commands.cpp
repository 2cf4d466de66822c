#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "irvm/distance.hpp"
#include "irvm/error.hpp"
#include "irvm/oracle.hpp"
#include "irvm/parliament.hpp"
#include "irvm/search.hpp"
#include "irvm/synthetic.hpp"

namespace irvm::cli {

namespace {

using Json = nlohmann::ordered_json;
using Table = std::vector<std::vector<std::string>>;

std::string render_table(const Table& rows) {
  std::vector<std::size_t> width;
  for (const auto& row : rows) {
    width.resize(std::max(width.size(), row.size()), 0);
    for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
  }
  std::string out;
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) line += "  ";
      line += row[i];
      if (i + 1 < row.size()) line.append(width[i] - row[i].size(), ' ');
    }
    out += line + '\n';
  }
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string render_csv(const Table& rows) {
  std::string out;
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += csv_field(row[i]);
    }
    out += '\n';
  }
  return out;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Profile load_ballots(const std::string& path) {
  try {
    return load_profile(path);
  } catch (const ParseError& e) {
    throw Error(path + ": " + e.what());
  }
}

// Comma-separated candidate ids or party codes ('+' joins parties).
CandidateSet resolve_alternates(const Profile& profile, const std::string& text) {
  CandidateSet out;
  std::stringstream in(text);
  std::string token;
  while (std::getline(in, token, ',')) {
    token.erase(0, token.find_first_not_of(" \t"));
    token.erase(token.find_last_not_of(" \t") + 1);
    if (token.empty()) continue;
    if (auto c = profile.find(token)) {
      out.insert(*c);
      continue;
    }
    const auto coalition = Coalition::parse(token);
    bool matched = false;
    for (CandidateIndex c = 0; c < profile.num_candidates(); ++c) {
      if (coalition.contains(profile.party(c))) {
        out.insert(c);
        matched = true;
      }
    }
    if (!matched) throw Error("'" + token + "' names no candidate or party of the election");
  }
  if (out.empty()) throw EmptyAlternates();
  return out;
}

Json id_list(const Profile& p, const std::vector<CandidateIndex>& cs) {
  Json out = Json::array();
  for (auto c : cs) out.push_back(p.name(c));
  return out;
}

Json ballots_json(const Profile& p, const std::vector<Ballot>& ballots) {
  Json out = Json::array();
  for (const auto& b : ballots) out.push_back({{"ranking", p.format_ranking(b.ranking)}, {"count", b.count}});
  return out;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

std::vector<std::string> names(const Profile& p, const std::vector<CandidateIndex>& cs) {
  std::vector<std::string> out;
  for (auto c : cs) out.push_back(p.name(c));
  return out;
}

TieRule parse_tie_rule(const std::string& s) {
  if (s == "fail") return TieRule::FailOnTie;
  if (s == "lex") return TieRule::Lexicographic;
  throw Error("unknown tie rule '" + s + "' (expected fail or lex)");
}

lp::Arithmetic parse_arithmetic(const std::string& s) {
  if (s == "exact") return lp::Arithmetic::Exact;
  if (s == "certified") return lp::Arithmetic::Certified;
  if (s == "float") return lp::Arithmetic::Float;
  throw Error("unknown arithmetic '" + s + "' (expected exact, certified or float)");
}

SearchOptions search_options(const Common& common) {
  SearchOptions o;
  if (common.tie_rule) o.tie_rule = *common.tie_rule;
  if (common.arithmetic) o.arithmetic = *common.arithmetic;
  return o;
}

}  // namespace

std::string run_tabulate(const std::string& path, const Common& common) {
  const auto profile = load_ballots(path);
  const auto count = run_election(profile, common.tie_rule.value_or(TieRule::FailOnTie));
  const auto lrm = last_round_margin(count);
  const int n = profile.num_candidates();

  if (common.format == Format::Json) {
    Json j;
    j["candidates"] = Json::array();
    for (const auto& c : profile.candidates()) j["candidates"].push_back({{"id", c.id}, {"party", c.party}});
    j["total_ballots"] = profile.total();
    j["rounds"] = Json::array();
    for (std::size_t i = 0; i < count.rounds.size(); ++i) {
      const auto& r = count.rounds[i];
      Json tallies = Json::object();
      for (auto c : r.standing.members()) tallies[profile.name(c)] = r.tallies[c];
      j["rounds"].push_back({{"round", i + 1},
                             {"tallies", tallies},
                             {"exhausted", r.tallies.exhausted},
                             {"eliminated", profile.name(r.eliminated)}});
    }
    j["winner"] = profile.name(count.winner);
    j["runner_up"] = profile.name(count.runner_up());
    j["last_round_margin"] = lrm;
    j["elimination_order"] = id_list(profile, count.elimination_order);
    return dump(j);
  }

  Table rows;
  std::vector<std::string> header{"round"};
  for (int c = 0; c < n; ++c) header.push_back(profile.name(c));
  header.push_back("exhausted");
  header.push_back("eliminated");
  if (common.format == Format::Csv) {
    header.push_back("winner");
    header.push_back("last_round_margin");
  }
  rows.push_back(header);
  for (std::size_t i = 0; i < count.rounds.size(); ++i) {
    const auto& r = count.rounds[i];
    std::vector<std::string> row{std::to_string(i + 1)};
    for (int c = 0; c < n; ++c) row.push_back(r.standing.contains(c) ? std::to_string(r.tallies[c]) : "-");
    row.push_back(std::to_string(r.tallies.exhausted));
    row.push_back(profile.name(r.eliminated));
    if (common.format == Format::Csv) {
      row.push_back(profile.name(count.winner));
      row.push_back(std::to_string(lrm));
    }
    rows.push_back(std::move(row));
  }
  if (common.format == Format::Csv) return render_csv(rows);
  return render_table(rows) + "\nwinner: " + profile.name(count.winner) +
         "\nrunner-up: " + profile.name(count.runner_up()) +
         "\nlast-round margin: " + std::to_string(lrm) + "\n";
}

std::string run_margin(const MarginArgs& args, const Common& common) {
  const auto profile = load_ballots(args.ballots);
  const auto options = search_options(common);
  const auto start = std::chrono::steady_clock::now();
  CandidateSet alternates;
  MarginResult result;
  if (args.alternates.empty()) {
    result = compute_mov(profile, options);
    alternates = profile.all().without(result.winner);
  } else {
    alternates = resolve_alternates(profile, args.alternates);
    result = compute_movc(profile, alternates, options);
  }
  const auto elapsed =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

  if (!args.dump_lp.empty()) {
    std::ofstream out(args.dump_lp, std::ios::binary);
    if (!out) throw Error("cannot write '" + args.dump_lp + "'");
    out << build_model(profile, result.witness_order).to_lp_text(profile);
  }

  const auto kind = args.alternates.empty() ? "mov" : "movc";
  const auto& s = result.stats;
  if (common.format == Format::Json) {
    Json j;
    j["kind"] = kind;
    j["winner"] = profile.name(result.winner);
    j["alternates"] = id_list(profile, alternates.members());
    j["margin"] = result.value;
    j["last_round_margin"] = result.last_round_margin;
    j["witness"] = {{"elimination_order", id_list(profile, result.witness_order.order())},
                    {"removed", ballots_json(profile, result.witness_manipulation.removed)},
                    {"added", ballots_json(profile, result.witness_manipulation.added)}};
    j["stats"] = {{"nodes_expanded", s.nodes_expanded},
                  {"nodes_pruned", s.nodes_pruned},
                  {"lps_solved", s.lps_solved},
                  {"ips_solved", s.ips_solved},
                  {"exact_fallbacks", s.exact_fallbacks}};
    if (args.stats) j["stats"]["elapsed_ms"] = elapsed;
    return dump(j);
  }

  const auto order = join(names(profile, result.witness_order.order()), " ");
  const auto alt = join(names(profile, alternates.members()), " ");
  if (common.format == Format::Csv) {
    Table rows{{"kind", "winner", "alternates", "margin", "last_round_margin", "witness_order"},
               {kind, profile.name(result.winner), alt, std::to_string(result.value),
                std::to_string(result.last_round_margin), order}};
    if (args.stats) {
      for (auto [k, v] : {std::pair{"nodes_expanded", s.nodes_expanded}, {"nodes_pruned", s.nodes_pruned},
                          {"lps_solved", s.lps_solved}, {"ips_solved", s.ips_solved},
                          {"exact_fallbacks", s.exact_fallbacks}}) {
        rows[0].push_back(k);
        rows[1].push_back(std::to_string(v));
      }
    }
    return render_csv(rows);
  }

  Table rows{{"winner:", profile.name(result.winner)},
             {"alternates:", alt},
             {kind == std::string("mov") ? "margin of victory:" : "margin to alternates:",
              std::to_string(result.value)},
             {"last-round margin:", std::to_string(result.last_round_margin)},
             {"witness order:", order}};
  std::string out = render_table(rows);
  Table changes{{"change", "ranking", "count"}};
  for (const auto& b : result.witness_manipulation.removed) {
    changes.push_back({"remove", profile.format_ranking(b.ranking), std::to_string(b.count)});
  }
  for (const auto& b : result.witness_manipulation.added) {
    changes.push_back({"add", b.ranking.empty() ? "(exhausted)" : profile.format_ranking(b.ranking),
                       std::to_string(b.count)});
  }
  if (changes.size() > 1) out += "\n" + render_table(changes);
  if (args.stats) {
    out += "\n" + render_table({{"nodes expanded:", std::to_string(s.nodes_expanded)},
                                {"nodes pruned:", std::to_string(s.nodes_pruned)},
                                {"LPs solved:", std::to_string(s.lps_solved)},
                                {"IPs solved:", std::to_string(s.ips_solved)},
                                {"exact fallbacks:", std::to_string(s.exact_fallbacks)},
                                {"elapsed ms:", std::to_string(static_cast<std::int64_t>(elapsed))}});
  }
  return out;
}

namespace {

struct ManifestSeat {
  std::string name;
  std::string path;
  std::map<std::string, std::string> parties;
};

struct Manifest {
  std::vector<ManifestSeat> seats;
  std::optional<TieRule> tie_rule;
  std::optional<lp::Arithmetic> arithmetic;
  std::optional<int> workers;
};

void only_keys(const Json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!j.is_object()) throw ParseError(0, where + " must be an object");
  for (const auto& [key, value] : j.items()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; })) {
      throw ParseError(0, where + ": unknown field '" + key + "'");
    }
  }
}

Manifest load_manifest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open manifest '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(0, path + ": " + e.what());
  }
  only_keys(j, {"seats", "options"}, "manifest");
  if (!j.contains("seats") || !j["seats"].is_array()) throw ParseError(0, "manifest needs a seats array");
  const auto base = std::filesystem::path(path).parent_path();

  Manifest m;
  std::set<std::string> seen;
  try {
    for (const auto& s : j["seats"]) {
      only_keys(s, {"name", "path", "parties"}, "seat");
      ManifestSeat seat;
      seat.name = s.at("name").get<std::string>();
      if (!seen.insert(seat.name).second) throw ParseError(0, "duplicate seat '" + seat.name + "'");
      auto p = std::filesystem::path(s.at("path").get<std::string>());
      seat.path = (p.is_absolute() ? p : base / p).string();
      if (!std::filesystem::exists(seat.path)) {
        throw Error("seat '" + seat.name + "': ballot file '" + seat.path + "' does not exist");
      }
      if (s.contains("parties")) {
        for (const auto& [id, party] : s["parties"].items()) seat.parties[id] = party.get<std::string>();
      }
      m.seats.push_back(std::move(seat));
    }
    if (j.contains("options")) {
      const auto& o = j["options"];
      only_keys(o, {"tie_rule", "arithmetic", "workers"}, "options");
      if (o.contains("tie_rule")) m.tie_rule = parse_tie_rule(o["tie_rule"].get<std::string>());
      if (o.contains("arithmetic")) m.arithmetic = parse_arithmetic(o["arithmetic"].get<std::string>());
      if (o.contains("workers")) m.workers = o["workers"].get<int>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, path + ": " + e.what());
  }
  if (m.seats.empty()) throw ParseError(0, "manifest lists no seats");
  return m;
}

Profile with_parties(const Profile& p, const std::map<std::string, std::string>& parties) {
  if (parties.empty()) return p;
  auto candidates = p.candidates();
  for (const auto& [id, party] : parties) {
    auto c = p.find(id);
    if (!c) throw Error("party map names unknown candidate '" + id + "'");
    candidates[*c].party = party;
  }
  return Profile(std::move(candidates), p.ballots());
}

std::vector<SeatRecord> analyze_manifest(const Manifest& m, const Coalition& target,
                                         const SearchOptions& options, int workers) {
  const auto n = m.seats.size();
  std::vector<SeatRecord> records(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (auto i = next++; i < n; i = next++) {
      try {
        const auto& seat = m.seats[i];
        records[i] = analyze_seat(seat.name, with_parties(load_ballots(seat.path), seat.parties), {target},
                                  options);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const auto threads = static_cast<std::size_t>(std::clamp<int>(workers, 1, 256));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < std::min(threads, n); ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  for (std::size_t i = 0; i < n; ++i) {
    if (!errors[i]) continue;
    try {
      std::rethrow_exception(errors[i]);
    } catch (const std::exception& e) {
      throw Error("seat '" + m.seats[i].name + "': " + e.what());
    }
  }
  return records;
}

}  // namespace

std::string run_parliament(const ParliamentArgs& args, const Common& common) {
  if (args.records.empty() == args.manifest.empty()) {
    throw Error("give exactly one of --records or --manifest");
  }
  if (args.mode != "lose" && args.mode != "win") throw Error("mode must be lose or win");
  const auto coalition = Coalition::parse(args.coalition);
  const bool lose = args.mode == "lose";

  std::vector<SeatRecord> records;
  if (!args.records.empty()) {
    try {
      records = load_seat_records(args.records);
    } catch (const ParseError& e) {
      throw Error(args.records + ": " + e.what());
    }
  } else {
    const auto manifest = load_manifest(args.manifest);
    Common merged = common;
    if (!merged.tie_rule) merged.tie_rule = manifest.tie_rule;
    if (!merged.arithmetic) merged.arithmetic = manifest.arithmetic;
    const int workers = args.workers.value_or(manifest.workers.value_or(1));
    records = analyze_manifest(manifest, lose ? coalition.complement() : coalition, search_options(merged),
                               workers);
  }
  if (!args.save_records.empty()) {
    std::ofstream out(args.save_records, std::ios::binary);
    if (!out) throw Error("cannot write '" + args.save_records + "'");
    out << serialize_seat_records(records);
  }

  const auto t = args.threshold.value_or(threshold(static_cast<std::int64_t>(records.size())));
  const auto scenario = lose ? seats_to_lose_majority(records, coalition, t) : seats_to_win(records, coalition, t);
  const auto mode = lose ? "lose-majority" : "win-majority";

  if (common.format == Format::Json) {
    Json j;
    j["mode"] = mode;
    j["coalition"] = coalition.key();
    j["seats"] = records.size();
    j["threshold"] = scenario.threshold;
    j["seats_held"] = scenario.seats_held;
    j["seats_needed"] = scenario.seats_needed;
    j["already_winning"] = scenario.already_winning;
    j["chosen_seats"] = Json::array();
    for (const auto& s : scenario.chosen_seats) j["chosen_seats"].push_back({{"seat", s.seat}, {"changes", s.changes}});
    j["total_changes"] = scenario.total_changes;
    return dump(j);
  }
  Table rows{{"seat", "changes"}};
  for (const auto& s : scenario.chosen_seats) rows.push_back({s.seat, std::to_string(s.changes)});
  rows.push_back({"total", std::to_string(scenario.total_changes)});
  if (common.format == Format::Csv) return render_csv(rows);

  std::string out = render_table({{"mode:", mode},
                                  {"coalition:", coalition.key()},
                                  {"seats:", std::to_string(records.size())},
                                  {"threshold:", std::to_string(scenario.threshold)},
                                  {"seats held:", std::to_string(scenario.seats_held)},
                                  {"seats needed:", std::to_string(scenario.seats_needed)}});
  if (scenario.already_winning) return out + "\ncoalition already holds the threshold\n";
  return out + "\n" + render_table(rows);
}

std::string run_oracle(const OracleArgs& args, const Common& common) {
  const auto profile = load_ballots(args.ballots);
  CandidateSet alternates;
  if (args.alternates.empty()) {
    const auto count = run_election(profile, common.tie_rule.value_or(TieRule::FailOnTie));
    alternates = profile.all().without(count.winner);
  } else {
    alternates = resolve_alternates(profile, args.alternates);
  }
  OracleConfig config;
  config.max_changes = args.max_changes;
  const auto value = oracle_movc(profile, alternates, config);
  if (common.format == Format::Json) {
    Json j;
    j["alternates"] = id_list(profile, alternates.members());
    j["max_changes"] = args.max_changes;
    j["margin"] = value ? Json(*value) : Json(nullptr);
    return dump(j);
  }
  const auto shown = value ? std::to_string(*value) : "above " + std::to_string(args.max_changes);
  if (common.format == Format::Csv) {
    return render_csv({{"alternates", "margin"}, {join(names(profile, alternates.members()), " "), shown}});
  }
  return render_table({{"alternates:", join(names(profile, alternates.members()), " ")}, {"margin:", shown}});
}

std::string run_generate(const GenerateArgs& args) {
  SyntheticConfig config;
  config.num_candidates = args.candidates;
  config.num_ballots = args.ballots;
  config.seed = args.seed;
  return serialize_profile(generate_profile(config));
}

}  // namespace irvm::cli
