#ifndef SIRSV_RNG_HPP
#define SIRSV_RNG_HPP

#include <cmath>
#include <cstdint>

namespace sirsv {

// splitmix64, used as a seed mixer and to expand a 64-bit seed into the
// xoshiro state. Reference: Vigna / Steele et al.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Seed for stream `stream_index` of a run keyed by `base_seed`. Paths are
// reproducible individually, independent of scheduling order.
inline std::uint64_t derive_stream_seed(std::uint64_t base_seed, std::uint64_t stream_index) {
  std::uint64_t s = base_seed + 0x9e3779b97f4a7c15ULL * (stream_index + 1);
  return splitmix64(s);
}

// xoshiro256++, seeded through splitmix64. Draws are bit-reproducible across
// platforms: uniforms are built from the top bits explicitly rather than via
// implementation-defined std::distributions.
class Xoshiro256pp {
public:
  explicit Xoshiro256pp(std::uint64_t seed) {
    for (auto& word : s_) word = splitmix64(seed);
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform on [0, 1) with 53 random bits.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform on the open interval (0, 1); safe as a log() argument and never
  // exactly 0 or 1, so exponential waits are strictly positive.
  double next_double_open() {
    return (static_cast<double>(next_u64() >> 12) + 0.5) * 0x1.0p-52;
  }

  double next_exponential(double rate) { return -std::log(next_double_open()) / rate; }

private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }
  std::uint64_t s_[4];
};

}  // namespace sirsv

#endif
