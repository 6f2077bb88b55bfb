#include "linebot/telemetry/link.hpp"

#include <cmath>

#include "linebot/errors.hpp"

namespace linebot::telemetry {

LossyLink::LossyLink(LinkModel model) : model_(model), rng_(model.seed) {
  if (!(model.drop_prob >= 0.0 && model.drop_prob <= 1.0)) {
    throw ContractViolation("link drop_prob must lie in [0, 1]");
  }
  if (!(model.latency >= 0.0) || !std::isfinite(model.latency)) {
    throw ContractViolation("link latency must be finite and >= 0");
  }
}

std::vector<Frame> LossyLink::step(double now, std::span<const Frame> inbound) {
  if (now < last_now_) throw ContractViolation("link time must be monotone");
  last_now_ = now;

  for (const Frame& f : inbound) {
    // One draw per frame regardless of drop_prob keeps the pattern a pure
    // function of the seed and the frame count.
    if (rng_.uniform() < model_.drop_prob) {
      ++dropped_;
      continue;
    }
    queue_.push_back({now + model_.latency, f});
  }

  std::vector<Frame> delivered;
  while (!queue_.empty() && queue_.front().due <= now) {
    delivered.push_back(std::move(queue_.front().frame));
    queue_.pop_front();
  }
  return delivered;
}

}  // namespace linebot::telemetry
