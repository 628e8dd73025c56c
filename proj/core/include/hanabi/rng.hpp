#pragma once

#include <cstdint>
#include <string_view>

namespace hanabi {

// SplitMix64. Chosen over std::mt19937 because the standard distributions are
// implementation-defined; every draw here is bit-stable across platforms.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next_u64() {
    uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n). Fixed-point multiply; bias is O(n/2^64).
  uint32_t uniform(uint32_t n) {
    return static_cast<uint32_t>((static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

  // Uniform in [0, 1), 53-bit resolution.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform01() < p; }

  uint64_t state() const { return state_; }

 private:
  uint64_t state_;
};

namespace detail {
inline constexpr uint64_t kFnvOffset = 0xCBF29CE484222325ull;
inline constexpr uint64_t kFnvPrime = 0x100000001B3ull;

inline uint64_t fnv1a(std::string_view s, uint64_t h = kFnvOffset) {
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= kFnvPrime;
  }
  return h;
}

inline uint64_t fnv1a_u64(uint64_t v, uint64_t h) {
  for (int i = 0; i < 8; ++i) {
    h ^= v & 0xFF;
    h *= kFnvPrime;
    v >>= 8;
  }
  return h;
}

inline uint64_t finalize(uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}
}  // namespace detail

// Named substreams off one master seed. Counter arguments make the streams
// addressable (generation g, game i) without sequential RNG state, which is
// what keeps checkpoint-resume and parallel evaluation reproducible.
inline uint64_t stream_seed(uint64_t master, std::string_view name) {
  return detail::finalize(detail::fnv1a_u64(master, detail::fnv1a(name)));
}

inline uint64_t stream_seed(uint64_t master, std::string_view name, uint64_t a) {
  return detail::finalize(detail::fnv1a_u64(a, detail::fnv1a_u64(master, detail::fnv1a(name))));
}

inline uint64_t stream_seed(uint64_t master, std::string_view name, uint64_t a, uint64_t b) {
  uint64_t h = detail::fnv1a_u64(master, detail::fnv1a(name));
  h = detail::fnv1a_u64(a, h);
  h = detail::fnv1a_u64(b, h);
  return detail::finalize(h);
}

inline uint64_t stream_seed(uint64_t master, std::string_view name, uint64_t a, uint64_t b,
                            uint64_t c) {
  uint64_t h = detail::fnv1a_u64(master, detail::fnv1a(name));
  h = detail::fnv1a_u64(a, h);
  h = detail::fnv1a_u64(b, h);
  h = detail::fnv1a_u64(c, h);
  return detail::finalize(h);
}

}  // namespace hanabi
