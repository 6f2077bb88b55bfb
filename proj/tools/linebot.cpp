// Command-line front end: batch simulation, live serving, scenario listing.

#include <atomic>
#include <csignal>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "linebot/errors.hpp"
#include "linebot/harness/config.hpp"
#include "linebot/harness/scenarios.hpp"
#include "linebot/harness/serve.hpp"
#include "linebot/harness/simulation.hpp"
#include "linebot/harness/trace.hpp"

namespace {

std::atomic<bool> g_stop{false};

void on_signal(int) { g_stop = true; }

// Errors go to stderr as a single JSON line: {"error":CATEGORY,"message":TEXT}.
int fail(const std::string& category, const std::string& message, int code = 1) {
  nlohmann::json j{{"error", category}, {"message", message}};
  std::cerr << j.dump() << '\n';
  return code;
}

linebot::harness::ScenarioConfig load(const std::string& arg) {
  const auto path = linebot::harness::resolve_config(arg);
  if (!path) throw linebot::IoError("no config file or scenario named '" + arg + "'");
  return linebot::harness::load_config_file(*path);
}

}  // namespace

int main(int argc, char** argv) {
  namespace h = linebot::harness;

  CLI::App app{"linebot: power-line inspection robot simulator"};
  app.require_subcommand(1);

  std::string config_arg;
  std::string out_path;
  std::optional<std::uint64_t> seed;
  std::optional<double> duration;
  auto* simulate = app.add_subcommand("simulate", "Run a scenario offline and write a CSV trace");
  simulate->add_option("--config", config_arg, "Config file or shipped scenario name")->required();
  simulate->add_option("--out", out_path, "Output CSV path")->required();
  simulate->add_option("--seed", seed, "Override sim.seed");
  simulate->add_option("--duration", duration, "Override sim.duration_s");

  std::uint16_t tcp_port = 0;
  std::uint16_t ws_port = 0;
  double speed = 1.0;
  auto* serve = app.add_subcommand("serve", "Run a scenario in real time behind the telemetry bridge");
  serve->add_option("--config", config_arg, "Config file or shipped scenario name")->required();
  serve->add_option("--tcp-port", tcp_port, "Raw frame TCP port")->required();
  serve->add_option("--ws-port", ws_port, "WebSocket JSON port")->required();
  serve->add_option("--speed", speed, "Sim seconds per wall-clock second")->check(CLI::PositiveNumber);

  auto* scenarios = app.add_subcommand("scenarios", "Inspect shipped scenarios");
  scenarios->require_subcommand(1);
  auto* list = scenarios->add_subcommand("list", "List shipped scenarios");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail("usage", e.what(), 2);
  }

  try {
    if (*simulate) {
      auto config = load(config_arg);
      if (seed) config.sim.seed = *seed;
      if (duration) h::set_duration(config, *duration);
      h::write_csv(h::run(config), out_path);
      return 0;
    }
    if (*serve) {
      auto config = load(config_arg);
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      h::ServeOptions options;
      options.realtime_factor = speed;
      options.on_ready = [](std::uint16_t tcp, std::uint16_t ws) {
        std::printf("serving tcp=%u ws=%u\n", static_cast<unsigned>(tcp), static_cast<unsigned>(ws));
        std::fflush(stdout);
      };
      h::serve(config, tcp_port, ws_port, options, g_stop);
      return 0;
    }
    if (*list) {
      for (const auto& s : h::list_scenarios()) {
        std::printf("%-16s %s\n", s.name.c_str(), s.description.c_str());
      }
      return 0;
    }
  } catch (const linebot::Error& e) {
    return fail(e.category(), e.what());
  } catch (const std::exception& e) {
    return fail("internal", e.what());
  }
  return 0;
}
