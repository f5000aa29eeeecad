#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>

namespace mmshare {

// splitmix64 finalizer. Used both as the step function of the SplitMix64
// engine and as a keyed hash for counter-style draws.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Derives an independent stream seed from a base seed and a key path, e.g.
// derive_seed(base, {kDropTag, drop_index}). Every random quantity in the
// simulator is reachable from one base seed through a named path, so any
// drop (or any single link) can be re-generated in isolation.
constexpr std::uint64_t derive_seed(std::uint64_t base,
                                    std::initializer_list<std::uint64_t> path) {
  std::uint64_t h = mix64(base);
  for (std::uint64_t k : path) h = mix64(h ^ k);
  return h;
}

// Sequential engine over the splitmix64 stream. Satisfies
// UniformRandomBitGenerator, so standard distributions work with it.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~0ull; }

  result_type operator()() {
    state_ += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  double u01() { return ((*this)() >> 11) * 0x1.0p-53; }  // [0, 1)

 private:
  std::uint64_t state_;
};

// Keyed (stateless) draws: pure functions of the key, evaluable in any
// order. The per-slot fading draws use these so that the same
// (drop, slot, user, bs) tuple sees the same realization in every sharing
// regime, which pairs the Monte Carlo comparisons.

inline double keyed_u01(std::uint64_t key) { return (mix64(key) >> 11) * 0x1.0p-53; }

// Unit-mean exponential (Rayleigh fading power gain).
inline double keyed_exp(std::uint64_t key) { return -std::log1p(-keyed_u01(key)); }

// Standard normal via Box-Muller on two sub-keys.
inline double keyed_normal(std::uint64_t key) {
  const double u1 = 1.0 - keyed_u01(mix64(key ^ 0x5bf0363546e57a63ull));  // (0, 1]
  const double u2 = keyed_u01(mix64(key ^ 0xa3ec3ef9f3d2b6cdull));
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
}

}  // namespace mmshare
