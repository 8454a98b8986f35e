#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace cgpx {

// Deterministic random source. std::mt19937_64 is bit-exact across
// platforms, but the standard <random> distributions are not, so all
// draw logic lives here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Unbiased integer in [0, n). n must be > 0.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
    for (;;) {
      const std::uint64_t r = engine_();
      if (r >= threshold) return r % n;
    }
  }

  int index(std::size_t n) { return static_cast<int>(below(n)); }

  // Double in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

  bool chance(double p) { return unit() < p; }

 private:
  std::mt19937_64 engine_;
};

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t fnv1a64(std::string_view s,
                                std::uint64_t h = 0xcbf29ce484222325ULL) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Stable seed for one (problem, operator, replicate, role) cell of an
// experiment. Pure function of its arguments; identical on every platform.
inline std::uint64_t derive_seed(std::uint64_t base, std::string_view problem,
                                 std::string_view operator_tag,
                                 std::uint64_t replicate,
                                 std::string_view role) {
  std::uint64_t h = fnv1a64(problem);
  h = fnv1a64("/", h);
  h = fnv1a64(operator_tag, h);
  h = fnv1a64("/", h);
  h = fnv1a64(role, h);
  return splitmix64(splitmix64(base ^ h) + replicate);
}

}  // namespace cgpx
