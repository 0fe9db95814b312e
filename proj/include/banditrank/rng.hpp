// Seeded random streams and seed derivation.
//
// Every randomized stage derives its generator from (master seed, stage tag,
// indices...), so results do not depend on scheduling order and adding a new
// stage never perturbs the streams of existing ones.
#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace banditrank {

constexpr std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  return h;
}

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

constexpr std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t v) {
  return splitmix64(seed ^ splitmix64(v));
}

inline std::uint64_t derive_seed(std::uint64_t master, std::string_view tag) {
  return mix_seed(master, fnv1a64(tag));
}

template <typename... Ix>
std::uint64_t derive_seed(std::uint64_t master, std::string_view tag, Ix... indices) {
  std::uint64_t s = derive_seed(master, tag);
  ((s = mix_seed(s, static_cast<std::uint64_t>(indices))), ...);
  return s;
}

// mt19937_64 with draw helpers that do not go through std::*_distribution,
// keeping emitted values identical across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform over [0, n). Rejection sampling, bias-free.
  std::size_t index_below(std::size_t n) {
    const std::uint64_t bound = n;
    const std::uint64_t limit = std::uint64_t(-1) - std::uint64_t(-1) % bound;
    std::uint64_t v = engine_();
    while (v >= limit) v = engine_();
    return static_cast<std::size_t>(v % bound);
  }

  // Uniform on [0, 1) with 53 bits of precision.
  double real01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return real01() < p; }

  // Standard normal via Marsaglia's polar method; the paired value is
  // discarded so the stream depends only on the call sequence.
  double gaussian() {
    for (;;) {
      const double u = 2.0 * real01() - 1.0;
      const double v = 2.0 * real01() - 1.0;
      const double s = u * u + v * v;
      if (s > 0.0 && s < 1.0) return u * std::sqrt(-2.0 * std::log(s) / s);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace banditrank
