#pragma once

#include <json.hpp>
#include <stdexcept>
#include <string>
#include <vector>

#include "enaqt/ensemble.hpp"

namespace enaqt {

// Schema violation in an experiment config; path is e.g. "sweeps[1].chain.gamma_inj".
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string path, const std::string& message)
      : std::runtime_error(path + ": " + message), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

// Sweeps whose Liouvillian would exceed this Fock dimension are rejected.
constexpr std::size_t kMaxFockDim = 40;

struct SweepConfig {
  SweepSpec spec;
  nlohmann::json resolved;  // input with defaults filled in and grids expanded
};

struct ConfigOverrides {
  std::optional<int> realizations;
  std::optional<std::uint64_t> master_seed;
};

/// Parses either a single sweep object or {"name", "master_seed", "sweeps": [...]}.
/// Unknown keys and out-of-range values raise ConfigError with the field path.
std::vector<SweepConfig> parse_config(const nlohmann::json& doc, const ConfigOverrides& overrides = {});

nlohmann::json load_json_file(const std::string& path);

}  // namespace enaqt
