#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace zodd {

/// Philox4x32-10 block function (Salmon et al., SC'11). Maps a 128-bit counter
/// and a 64-bit key to 128 pseudo-random bits.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key) noexcept;

/// SplitMix64 finalizer; used to derive child stream identifiers.
std::uint64_t mix64(std::uint64_t z) noexcept;

/// Counter-based generator over one (seed, stream) pair.
///
/// The seed is the Philox key, the stream id occupies the high half of the
/// counter and a block index the low half, so every (seed, stream) pair owns a
/// disjoint 2^64-block slice of the counter space. Satisfies
/// UniformRandomBitGenerator.
class RngEngine {
 public:
  using result_type = std::uint64_t;

  RngEngine(std::uint64_t seed, std::uint64_t stream) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept;

  /// Uniform draw in [0, 1) with 53 random bits.
  double uniform() noexcept;

 private:
  void refill() noexcept;

  std::array<std::uint32_t, 2> key_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  std::array<std::uint64_t, 2> buffer_{};
  int available_ = 0;
};

/// Immutable identifier of a random stream.
///
/// Identical (seed, stream id) pairs produce identical sequences. `child`
/// derives statistically independent sub-streams, so work item i of iteration
/// t can own `root.child(t).child(i)` regardless of evaluation order.
class RngStream {
 public:
  constexpr RngStream() noexcept = default;
  constexpr RngStream(std::uint64_t seed, std::uint64_t stream_id) noexcept
      : seed_(seed), stream_id_(stream_id) {}

  constexpr std::uint64_t seed() const noexcept { return seed_; }
  constexpr std::uint64_t stream_id() const noexcept { return stream_id_; }

  RngStream child(std::uint64_t tag) const noexcept;
  RngEngine engine() const noexcept { return RngEngine(seed_, stream_id_); }

  friend constexpr bool operator==(const RngStream&, const RngStream&) = default;

 private:
  std::uint64_t seed_ = 0;
  std::uint64_t stream_id_ = 0;
};

}  // namespace zodd
