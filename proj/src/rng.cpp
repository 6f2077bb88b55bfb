#include "linebot/rng.hpp"

#include <cmath>
#include <numbers>

namespace linebot {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ull;
  }
  return h;
}

}  // namespace

std::uint64_t RngStream::derive_seed(std::uint64_t root_seed, std::string_view name) {
  return splitmix64(splitmix64(root_seed) ^ fnv1a(name));
}

RngStream RngStream::derive(std::uint64_t root_seed, std::string_view name) {
  return RngStream(derive_seed(root_seed, name));
}

double RngStream::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RngStream::gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // Box-Muller; 1 - u keeps the log argument in (0, 1].
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double phi = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(phi);
  has_spare_ = true;
  return r * std::cos(phi);
}

double RngStream::truncated_gaussian(double limit) {
  for (;;) {
    const double z = gaussian();
    if (std::abs(z) <= limit) return z;
  }
}

}  // namespace linebot
