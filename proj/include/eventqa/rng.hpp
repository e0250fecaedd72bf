#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>

namespace eventqa {

/// Philox4x32-10 counter-based block function (Salmon et al., Random123).
struct Philox4x32 {
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter block(Counter counter, Key key) noexcept;
};

/// Deterministic random stream identified by (seed, stream_index). Distinct stream
/// indices address disjoint counter ranges, so streams can be drawn in any order or
/// concurrently. Draw helpers avoid <random> distributions, whose output differs
/// between standard library implementations.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_index) noexcept;

  std::uint64_t next_u64() noexcept;
  /// Uniform in [0, n). n must be > 0.
  std::uint64_t uniform_index(std::uint64_t n) noexcept;
  /// Uniform in [0, 1) with 53 bits of precision.
  double uniform01() noexcept;
  bool bernoulli(double p) noexcept { return uniform01() < p; }
  /// Index drawn proportionally to non-negative weights (at least one positive).
  std::size_t weighted(std::span<const double> weights) noexcept;

  [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }
  [[nodiscard]] std::uint64_t stream_index() const noexcept { return stream_; }

 private:
  std::uint32_t next_u32() noexcept;

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t block_index_ = 0;
  Philox4x32::Counter buffer_{};
  unsigned used_ = 4;
};

}  // namespace eventqa
