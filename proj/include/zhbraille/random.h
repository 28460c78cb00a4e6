#pragma once

#include <cstdint>

namespace zhbraille {

// SplitMix64 finaliser; a bijection on 64-bit values.
constexpr std::uint64_t Mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Stateless draw keyed by (seed, a, b): the value depends only on the key,
// never on call order.
constexpr std::uint64_t CounterHash(std::uint64_t seed, std::uint64_t a,
                                    std::uint64_t b) {
  return Mix64(Mix64(Mix64(seed) ^ a) ^ b);
}

// Uniform in [0, 1) from the top 53 bits.
constexpr double ToUnitInterval(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, bound) by rejection, consuming successive counters
// starting at `counter`.
std::uint64_t UniformBelow(std::uint64_t seed, std::uint64_t stream,
                           std::uint64_t& counter, std::uint64_t bound);

}  // namespace zhbraille
