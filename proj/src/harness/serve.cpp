#include "linebot/harness/serve.hpp"

#include <chrono>
#include <thread>

#include "linebot/telemetry/bridge.hpp"

namespace linebot::harness {

Trace serve_loop(Simulation& sim, FramePort& port, const ServeOptions& options,
                 const std::atomic<bool>& stop) {
  using clock = std::chrono::steady_clock;
  const auto start = clock::now();
  const double wall_period = sim.config().control.period_s / options.realtime_factor;
  Trace trace;

  for (std::int64_t k = 0; !stop.load(); ++k) {
    if (options.max_steps && k >= *options.max_steps) break;
    if (options.paced) {
      const auto target = start + std::chrono::duration_cast<clock::duration>(
                                      std::chrono::duration<double>(k * wall_period));
      std::this_thread::sleep_until(target);
    }
    for (auto& cmd : port.take_commands()) sim.submit_command(std::move(cmd));
    auto out = sim.advance();
    for (const auto& frame : out.downlink) port.publish(frame);
    if (options.record_trace) trace.push_back(out.record);
  }
  return trace;
}

void serve(const ScenarioConfig& config, std::uint16_t tcp_port, std::uint16_t ws_port,
           const ServeOptions& options, const std::atomic<bool>& stop) {
  Simulation sim(config);
  telemetry::Bridge bridge(tcp_port, ws_port);
  if (options.on_ready) options.on_ready(bridge.tcp_port(), bridge.ws_port());
  serve_loop(sim, bridge, options, stop);
  bridge.stop();
}

}  // namespace linebot::harness
