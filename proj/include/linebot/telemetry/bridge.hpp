#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "linebot/harness/serve.hpp"
#include "linebot/telemetry/frame.hpp"

namespace linebot::telemetry {

// Network side of the link. Listens on two ports:
//   - TCP: raw binary frames in both directions.
//   - WebSocket: the same frames as JSON text messages (see json_codec.hpp).
// Commands from either side land in one FIFO; published frames go to every
// connected client. Networking runs on its own thread.
//
// A malformed WebSocket command is answered on that connection with an ACK
// of status kMalformed and never reaches the simulation.
class Bridge : public harness::FramePort {
 public:
  // Throws IoError if either port cannot be bound. Port 0 picks a free one.
  Bridge(std::uint16_t tcp_port, std::uint16_t ws_port);
  ~Bridge() override;

  Bridge(const Bridge&) = delete;
  Bridge& operator=(const Bridge&) = delete;

  std::uint16_t tcp_port() const;
  std::uint16_t ws_port() const;

  std::vector<Frame> take_commands() override;
  void publish(const Frame& frame) override;

  void stop();

 private:
  struct Impl;
  std::shared_ptr<Impl> impl_;
};

}  // namespace linebot::telemetry
