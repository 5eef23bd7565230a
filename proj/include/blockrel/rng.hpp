#pragma once

#include <cstdint>
#include <limits>

namespace blockrel {

inline std::uint64_t splitmix64_mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// SplitMix64 stream whose starting state is a hash of (seed, index, substream).
// Any trial can be replayed without generating the ones before it, so results
// do not depend on how trials are distributed over workers.
class StreamRng {
 public:
  using result_type = std::uint64_t;

  StreamRng(std::uint64_t seed, std::uint64_t index, std::uint64_t substream = 0) {
    std::uint64_t s = splitmix64_mix(seed + 0x9e3779b97f4a7c15ULL);
    s = splitmix64_mix(s ^ (index + 0x632be59bd9b4e019ULL));
    s = splitmix64_mix(s ^ (substream + 0x8cb92ba72f3d8dd7ULL));
    state_ = s;
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return splitmix64_mix(state_);
  }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

}  // namespace blockrel
