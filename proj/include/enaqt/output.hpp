#pragma once

#include <cstdint>
#include <filesystem>
#include <json.hpp>
#include <string>
#include <vector>

#include "enaqt/ensemble.hpp"

namespace enaqt {

inline constexpr const char* kCodeVersion = "0.1.0";

// FNV-1a over the compact dump of the resolved sweep config.
std::uint64_t spec_hash(const nlohmann::json& resolved);

struct Table {
  std::string name;  // "summary", "populations", "eigen_populations", "state_diagonal"
  std::vector<std::string> columns;
  std::vector<std::vector<nlohmann::json>> rows;  // numbers, or strings for state labels
};

// Summary columns: axis columns, then <obs>_mean, <obs>_stderr for J,
// N_total, delta_n, ipr, then R (successful realizations) and failures.
std::vector<Table> result_tables(const SweepResult& result);

std::string to_csv(const Table& table, const nlohmann::json& resolved, const SweepResult& result);
nlohmann::json to_json(const std::vector<Table>& tables, const nlohmann::json& resolved,
                       const SweepResult& result);

// Writes <name>.csv, <name>_<table>.csv for the long-form tables and
// <name>.json into dir; returns the paths written.
std::vector<std::filesystem::path> write_outputs(const SweepResult& result, const nlohmann::json& resolved,
                                                 const std::filesystem::path& dir);

std::string format_number(double x);

}  // namespace enaqt
