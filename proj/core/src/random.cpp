#include "spectral/random.hpp"

#include <cmath>
#include <numbers>

namespace spectral::random {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

}  // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> c, std::array<std::uint32_t, 2> k) noexcept {
  for (int round = 0; round < 10; ++round) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * c[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * c[2];
    const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const auto lo0 = static_cast<std::uint32_t>(p0);
    const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const auto lo1 = static_cast<std::uint32_t>(p1);
    c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
    k[0] += kWeyl0;
    k[1] += kWeyl1;
  }
  return c;
}

double to_open_unit(std::uint32_t hi, std::uint32_t lo) noexcept {
  // 52 bits plus a half offset stays exactly representable below 1.
  const std::uint64_t bits = (static_cast<std::uint64_t>(hi) << 20) | (lo >> 12);
  return (static_cast<double>(bits) + 0.5) * 0x1p-52;
}

double NormalStream::operator()(std::uint64_t step) noexcept {
  const std::uint64_t pair = step >> 1;
  if (pair != cached_pair_) {
    const auto block = philox4x32({static_cast<std::uint32_t>(pair), static_cast<std::uint32_t>(path_),
                                   static_cast<std::uint32_t>(path_ >> 32), dim_ ^ static_cast<std::uint32_t>(pair >> 32)},
                                  {static_cast<std::uint32_t>(seed_), static_cast<std::uint32_t>(seed_ >> 32)});
    const double u1 = to_open_unit(block[0], block[1]);
    const double u2 = to_open_unit(block[2], block[3]);
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    cached_[0] = r * std::cos(a);
    cached_[1] = r * std::sin(a);
    cached_pair_ = pair;
  }
  return cached_[step & 1];
}

}  // namespace spectral::random
