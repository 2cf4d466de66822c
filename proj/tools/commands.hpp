#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "irvm/lp.hpp"
#include "irvm/tabulate.hpp"

namespace irvm::cli {

enum class Format { Table, Json, Csv };

/// Unset options fall back to manifest options, then to library defaults.
struct Common {
  Format format = Format::Table;
  std::optional<TieRule> tie_rule;
  std::optional<lp::Arithmetic> arithmetic;
};

struct MarginArgs {
  std::string ballots;
  std::string alternates;  ///< empty: every non-winner
  std::string dump_lp;
  bool stats = false;
};

struct ParliamentArgs {
  std::string records;
  std::string manifest;
  std::string mode = "lose";
  std::string coalition;
  std::optional<std::int64_t> threshold;
  std::optional<int> workers;
  std::string save_records;
};

struct OracleArgs {
  std::string ballots;
  std::string alternates;
  std::int64_t max_changes = 30;
};

struct GenerateArgs {
  int candidates = 8;
  std::int64_t ballots = 50000;
  std::uint64_t seed = 1;
};

/// Each command returns the full report text; errors propagate as exceptions.
std::string run_tabulate(const std::string& path, const Common& common);
std::string run_margin(const MarginArgs& args, const Common& common);
std::string run_parliament(const ParliamentArgs& args, const Common& common);
std::string run_oracle(const OracleArgs& args, const Common& common);
std::string run_generate(const GenerateArgs& args);

}  // namespace irvm::cli
