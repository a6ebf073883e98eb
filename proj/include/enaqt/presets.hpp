#pragma once

#include <json.hpp>
#include <string>
#include <vector>

namespace enaqt {

struct Preset {
  std::string name;
  std::string description;
  nlohmann::json config;  // multi-sweep config document, see parse_config
};

const std::vector<Preset>& presets();
const Preset* find_preset(const std::string& name);

}  // namespace enaqt
