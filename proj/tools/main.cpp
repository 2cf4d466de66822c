#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "commands.hpp"
#include "irvm/error.hpp"

namespace {

using irvm::cli::Format;

const std::map<std::string, Format> kFormats{{"table", Format::Table}, {"json", Format::Json}, {"csv", Format::Csv}};
const std::map<std::string, irvm::TieRule> kTieRules{{"fail", irvm::TieRule::FailOnTie},
                                                     {"lex", irvm::TieRule::Lexicographic}};
const std::map<std::string, irvm::lp::Arithmetic> kArithmetic{{"exact", irvm::lp::Arithmetic::Exact},
                                                              {"certified", irvm::lp::Arithmetic::Certified},
                                                              {"float", irvm::lp::Arithmetic::Float}};

void add_common(CLI::App* cmd, irvm::cli::Common& common) {
  cmd->add_option("--format", common.format, "Report format")
      ->transform(CLI::CheckedTransformer(kFormats, CLI::ignore_case));
  cmd->add_option("--tie-rule", common.tie_rule, "Tie handling in the official count (fail or lex)")
      ->transform(CLI::CheckedTransformer(kTieRules, CLI::ignore_case));
  cmd->add_option("--arithmetic", common.arithmetic, "LP arithmetic (exact, certified or float)")
      ->transform(CLI::CheckedTransformer(kArithmetic, CLI::ignore_case));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Margins of victory for instant-runoff seats and parliaments"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "irvmargin 0.1.0");

  irvm::cli::Common common;
  std::string output;
  std::string report;
  std::function<std::string()> action;

  auto* tabulate = app.add_subcommand("tabulate", "Count a ballot file round by round");
  std::string tabulate_path;
  tabulate->add_option("ballots", tabulate_path, "Ballot file")->required();
  add_common(tabulate, common);
  tabulate->callback([&] { action = [&] { return irvm::cli::run_tabulate(tabulate_path, common); }; });

  irvm::cli::MarginArgs margin_args;
  auto add_margin = [&](CLI::App* cmd, bool need_alternates) {
    cmd->add_option("ballots", margin_args.ballots, "Ballot file")->required();
    auto* alt = cmd->add_option("--alternates", margin_args.alternates,
                                "Comma-separated candidate ids or party codes (default: every non-winner)");
    if (need_alternates) alt->required();
    cmd->add_option("--dump-lp", margin_args.dump_lp, "Write the witness order's distance LP to this file");
    cmd->add_flag("--stats", margin_args.stats, "Include search statistics and timing");
    add_common(cmd, common);
    cmd->callback([&] { action = [&] { return irvm::cli::run_margin(margin_args, common); }; });
  };
  add_margin(app.add_subcommand("margin", "Margin of victory, or margin to a set of alternates"), false);
  add_margin(app.add_subcommand("movc", "Margin to a set of alternates (margin --alternates)"), true);

  irvm::cli::ParliamentArgs parliament_args;
  auto* parliament = app.add_subcommand("parliament", "Fewest ballot changes to change a parliament");
  auto* records = parliament->add_option("--records", parliament_args.records, "Seat-record CSV");
  auto* manifest = parliament->add_option("--manifest", parliament_args.manifest, "Seat manifest (JSON)");
  records->excludes(manifest);
  parliament->add_option("--mode", parliament_args.mode, "lose or win")
      ->check(CLI::IsMember({"lose", "win"}));
  parliament->add_option("--coalition", parliament_args.coalition, "Party codes joined by '+'")->required();
  parliament->add_option("--threshold", parliament_args.threshold, "Seats needed to govern")
      ->check(CLI::PositiveNumber);
  parliament->add_option("--workers", parliament_args.workers, "Seats analyzed in parallel")
      ->check(CLI::PositiveNumber);
  parliament->add_option("--save-records", parliament_args.save_records, "Write computed seat records here");
  add_common(parliament, common);
  parliament->callback([&] { action = [&] { return irvm::cli::run_parliament(parliament_args, common); }; });

  irvm::cli::OracleArgs oracle_args;
  auto* oracle = app.add_subcommand("oracle", "Exhaustive margin for tiny elections");
  oracle->group("");
  oracle->add_option("ballots", oracle_args.ballots, "Ballot file")->required();
  oracle->add_option("--alternates", oracle_args.alternates, "Candidate ids or party codes");
  oracle->add_option("--max-changes", oracle_args.max_changes, "Largest margin searched")
      ->check(CLI::NonNegativeNumber);
  add_common(oracle, common);
  oracle->callback([&] { action = [&] { return irvm::cli::run_oracle(oracle_args, common); }; });

  irvm::cli::GenerateArgs generate_args;
  auto* generate = app.add_subcommand("generate", "Write a synthetic ballot file");
  generate->add_option("--candidates", generate_args.candidates, "Number of candidates")
      ->check(CLI::Range(2, 64));
  generate->add_option("--ballots", generate_args.ballots, "Number of ballots")->check(CLI::PositiveNumber);
  generate->add_option("--seed", generate_args.seed, "Random seed");
  generate->callback([&] { action = [&] { return irvm::cli::run_generate(generate_args); }; });

  for (auto* cmd : app.get_subcommands({})) {
    cmd->add_option("-o,--output", output, "Write the report to a file instead of stdout");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    report = action();
  } catch (const std::exception& e) {
    std::cerr << "irvmargin: error: " << e.what() << '\n';
    return 1;
  }
  if (output.empty()) {
    std::cout << report;
  } else {
    std::ofstream out(output, std::ios::binary);
    if (!out || !(out << report)) {
      std::cerr << "irvmargin: error: cannot write '" << output << "'\n";
      return 1;
    }
  }
  return 0;
}
