#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "linebot/harness/config.hpp"
#include "linebot/harness/simulation.hpp"
#include "linebot/harness/trace.hpp"
#include "linebot/telemetry/frame.hpp"

namespace linebot::harness {

// Message boundary between the simulation loop and whatever carries frames
// to operators. Only frames cross it; simulation state is never shared.
class FramePort {
 public:
  virtual ~FramePort() = default;
  // Commands received since the last call, in arrival order.
  virtual std::vector<telemetry::Frame> take_commands() = 0;
  virtual void publish(const telemetry::Frame& frame) = 0;
};

struct ServeOptions {
  double realtime_factor = 1.0;  // sim seconds per wall-clock second
  bool paced = true;
  std::optional<std::int64_t> max_steps;  // stop after this many control steps
  bool record_trace = false;
  std::function<void(std::uint16_t tcp_port, std::uint16_t ws_port)> on_ready;
};

// Drives the simulation one control step at a time: pull commands from the
// port, advance, publish downlink frames. Runs until `stop` is set or
// max_steps is reached. Returns the trace when record_trace is set.
Trace serve_loop(Simulation& sim, FramePort& port, const ServeOptions& options,
                 const std::atomic<bool>& stop);

// Binds the TCP and WebSocket listeners (0 picks a free port) and serves
// the scenario. Throws IoError if a port cannot be bound.
void serve(const ScenarioConfig& config, std::uint16_t tcp_port, std::uint16_t ws_port,
           const ServeOptions& options, const std::atomic<bool>& stop);

}  // namespace linebot::harness
