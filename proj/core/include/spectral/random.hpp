#pragma once

#include <array>
#include <cstdint>

namespace spectral::random {

/// Philox4x32-10 counter-based generator (Salmon et al. 2011).
[[nodiscard]] std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                                      std::array<std::uint32_t, 2> key) noexcept;

/// Standard normal draws addressed by (seed, path, dim, step).
///
/// Draws 2p and 2p+1 come from one Philox block with counter
/// (p, path_lo, path_hi, dim): two 52-bit uniforms in (0, 1) turned into a
/// Box-Muller pair (r cos, r sin). Any draw can be regenerated independently
/// of batch size or thread schedule.
class NormalStream {
 public:
  NormalStream(std::uint64_t seed, std::uint64_t path, std::uint32_t dim = 0) noexcept
      : seed_(seed), path_(path), dim_(dim) {}

  [[nodiscard]] double operator()(std::uint64_t step) noexcept;

 private:
  std::uint64_t seed_;
  std::uint64_t path_;
  std::uint32_t dim_;
  std::uint64_t cached_pair_ = ~std::uint64_t{0};
  double cached_[2] = {0.0, 0.0};
};

/// Uniform in the open interval (0, 1) from two 32-bit words (52 bits used).
[[nodiscard]] double to_open_unit(std::uint32_t hi, std::uint32_t lo) noexcept;

}  // namespace spectral::random
