#pragma once

#include <cstdint>
#include <deque>
#include <span>
#include <vector>

#include "linebot/rng.hpp"
#include "linebot/telemetry/frame.hpp"

namespace linebot::telemetry {

struct LinkModel {
  double drop_prob = 0.0;  // [0, 1]
  double latency = 0.0;    // s
  std::uint64_t seed = 0;
};

// One direction of an imperfect radio link. Frames are dropped independently
// with drop_prob and the survivors are delivered in order after a fixed
// latency.
class LossyLink {
 public:
  explicit LossyLink(LinkModel model);

  // Accepts frames sent at `now` and returns every frame due by `now`.
  // Throws ContractViolation if `now` moves backwards.
  std::vector<Frame> step(double now, std::span<const Frame> inbound);

  std::size_t in_flight() const { return queue_.size(); }
  std::uint64_t dropped() const { return dropped_; }

 private:
  struct InFlight {
    double due;
    Frame frame;
  };

  LinkModel model_;
  RngStream rng_;
  std::deque<InFlight> queue_;
  double last_now_ = -1.0;
  std::uint64_t dropped_ = 0;
};

}  // namespace linebot::telemetry
