#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace slehull {

/// Identifies one independent random stream: the experiment-wide master seed
/// plus a per-replica stream id. Streams with different ids never overlap.
struct Seed {
  std::uint64_t master = 0;
  std::uint64_t stream = 0;

  /// Sub-stream for a distinct role inside one replica (e.g. the driving path
  /// and the independent copy used by the stationarity flow).
  [[nodiscard]] constexpr Seed child(std::uint64_t role) const {
    return Seed{master, stream * kRoles + role};
  }

  static constexpr std::uint64_t kRoles = 8;

  friend constexpr bool operator==(const Seed&, const Seed&) = default;
};

/// Philox4x32-10 block function (Salmon et al. 2011).
class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static constexpr Counter block(Counter ctr, Key key) {
    for (int round = 0; round < 10; ++round) {
      if (round > 0) {
        key[0] += kWeyl0;
        key[1] += kWeyl1;
      }
      const std::uint64_t p0 = std::uint64_t{kMul0} * ctr[0];
      const std::uint64_t p1 = std::uint64_t{kMul1} * ctr[2];
      const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
      const auto lo0 = static_cast<std::uint32_t>(p0);
      const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
      const auto lo1 = static_cast<std::uint32_t>(p1);
      ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    }
    return ctr;
  }

 private:
  static constexpr std::uint32_t kMul0 = 0xD2511F53u;
  static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
  static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
  static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;
};

/// Counter-based uniform random bit generator over one Philox stream.
/// Key = master seed, counter = (64-bit block index, 64-bit stream id).
/// Satisfies std::uniform_random_bit_generator, so standard distributions
/// can draw from it.
class PhiloxStream {
 public:
  using result_type = std::uint32_t;

  explicit PhiloxStream(Seed seed)
      : key_{static_cast<std::uint32_t>(seed.master),
             static_cast<std::uint32_t>(seed.master >> 32)},
        stream_(seed.stream) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    if (used_ == 4) refill();
    return buffer_[used_++];
  }

  /// Number of 128-bit blocks consumed so far.
  [[nodiscard]] std::uint64_t blocks() const { return block_; }

 private:
  void refill() {
    const Philox4x32::Counter ctr{static_cast<std::uint32_t>(block_),
                                  static_cast<std::uint32_t>(block_ >> 32),
                                  static_cast<std::uint32_t>(stream_),
                                  static_cast<std::uint32_t>(stream_ >> 32)};
    buffer_ = Philox4x32::block(ctr, key_);
    ++block_;
    used_ = 0;
  }

  Philox4x32::Key key_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  Philox4x32::Counter buffer_{};
  int used_ = 4;
};

}  // namespace slehull
