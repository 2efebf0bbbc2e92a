#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace frontier {

// Philox4x64-10 counter-based generator (Salmon et al., Random123).
//
// The 256-bit counter is split as (block_lo, block_hi, stream, 0): every
// stream owns a disjoint slice of the counter space, so replicate r of an
// experiment draws from stream r and the sequence does not depend on which
// thread runs it or in what order.
class Philox4x64 {
 public:
  using result_type = std::uint64_t;
  using Counter = std::array<std::uint64_t, 4>;
  using Key = std::array<std::uint64_t, 2>;

  Philox4x64(std::uint64_t seed, std::uint64_t stream) noexcept
      : key_{seed, 0}, ctr_{0, 0, stream, 0} {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept {
    if (pos_ == 4) {
      buf_ = block(ctr_, key_);
      if (++ctr_[0] == 0) ++ctr_[1];
      pos_ = 0;
    }
    return buf_[pos_++];
  }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
  }

  // The raw bijection: ten rounds applied to one counter block.
  static Counter block(Counter ctr, Key key) noexcept {
    ctr = round(ctr, key);
    for (int i = 1; i < 10; ++i) {
      key[0] += kWeyl0;
      key[1] += kWeyl1;
      ctr = round(ctr, key);
    }
    return ctr;
  }

 private:
  static constexpr std::uint64_t kMul0 = 0xD2E7470EE14C6C93ULL;
  static constexpr std::uint64_t kMul1 = 0xCA5A826395121157ULL;
  static constexpr std::uint64_t kWeyl0 = 0x9E3779B97F4A7C15ULL;
  static constexpr std::uint64_t kWeyl1 = 0xBB67AE8584CAA73BULL;

  __extension__ using u128 = unsigned __int128;

  static Counter round(const Counter& c, const Key& k) noexcept {
    const u128 p0 = static_cast<u128>(kMul0) * c[0];
    const u128 p1 = static_cast<u128>(kMul1) * c[2];
    const auto hi0 = static_cast<std::uint64_t>(p0 >> 64);
    const auto lo0 = static_cast<std::uint64_t>(p0);
    const auto hi1 = static_cast<std::uint64_t>(p1 >> 64);
    const auto lo1 = static_cast<std::uint64_t>(p1);
    return {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
  }

  Key key_;
  Counter ctr_;
  Counter buf_{};
  int pos_ = 4;
};

}  // namespace frontier
