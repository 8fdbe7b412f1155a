#pragma once

#include <cstdint>
#include <random>

namespace sparsetls {

/// 64-bit avalanche mix (splitmix64 finalizer).
std::uint64_t mix64(std::uint64_t z) noexcept;

/// Reproducible random stream.
///
/// Backed by std::mt19937_64, whose output sequence is fixed by the C++
/// standard. Uniform and Gaussian variates are derived from the raw 64-bit
/// words by fixed transforms (53-bit mantissa fill, Box-Muller), so the same
/// seed gives the same doubles on every conforming platform with an IEEE libm.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed);

  std::uint64_t next_u64();

  /// Uniform on [0, 1).
  double uniform();

  /// Uniform on (0, 1].
  double uniform_open_zero();

  /// Standard normal via Box-Muller. The second variate of each pair is cached.
  double normal();

  /// Unbiased integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);

  /// Fair coin.
  bool coin();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Stream for one (scenario, trial) cell, independent of execution order.
RngStream derive_stream(std::uint64_t master_seed, std::uint64_t scenario_tag,
                        std::uint64_t trial_index);

}  // namespace sparsetls
