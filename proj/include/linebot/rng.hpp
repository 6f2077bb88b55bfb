#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace linebot {

// Deterministic random stream. Uniform and Gaussian draws are computed here
// from raw 64-bit engine output so results do not depend on the standard
// library's distribution implementations.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : engine_(seed) {}

  // Independent sub-stream for a named consumer ("imu", "link.up", ...).
  // Changing how much one consumer draws never perturbs another.
  static RngStream derive(std::uint64_t root_seed, std::string_view name);
  static std::uint64_t derive_seed(std::uint64_t root_seed, std::string_view name);

  // Uniform in [0, 1).
  double uniform();
  double gaussian();
  // Standard normal conditioned on |z| <= limit (rejection sampling).
  double truncated_gaussian(double limit);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace linebot
