#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace linebot::harness {

struct ScenarioInfo {
  std::string name;
  std::string description;
  std::filesystem::path path;
};

// Directory holding the shipped scenario files. LINEBOT_SCENARIO_DIR in the
// environment overrides the build-time location.
std::filesystem::path scenario_dir();

// Shipped scenarios sorted by name.
std::vector<ScenarioInfo> list_scenarios();

// Resolves a --config argument: an existing file path, or the name of a
// shipped scenario.
std::optional<std::filesystem::path> resolve_config(const std::string& arg);

}  // namespace linebot::harness
