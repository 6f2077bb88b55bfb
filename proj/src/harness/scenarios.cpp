#include "linebot/harness/scenarios.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace linebot::harness {

std::filesystem::path scenario_dir() {
  if (const char* env = std::getenv("LINEBOT_SCENARIO_DIR"); env && *env) return env;
  return LINEBOT_SCENARIO_DIR;
}

std::vector<ScenarioInfo> list_scenarios() {
  std::vector<ScenarioInfo> out;
  std::error_code ec;
  for (const auto& entry : std::filesystem::directory_iterator(scenario_dir(), ec)) {
    if (entry.path().extension() != ".json") continue;
    ScenarioInfo info{entry.path().stem().string(), "", entry.path()};
    std::ifstream in(entry.path());
    const auto doc = nlohmann::json::parse(in, nullptr, false);
    if (doc.is_object()) {
      info.name = doc.value("name", info.name);
      info.description = doc.value("description", "");
    }
    out.push_back(std::move(info));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
  return out;
}

std::optional<std::filesystem::path> resolve_config(const std::string& arg) {
  if (std::filesystem::is_regular_file(arg)) return std::filesystem::path(arg);
  for (const auto& s : list_scenarios()) {
    if (s.name == arg || s.path.stem() == arg) return s.path;
  }
  return std::nullopt;
}

}  // namespace linebot::harness
