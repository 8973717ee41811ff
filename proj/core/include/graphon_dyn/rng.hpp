#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>

namespace graphon_dyn {

using Seed = std::uint64_t;
using Engine = std::mt19937_64;

/// SplitMix64 finalizer. Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// FNV-1a over the bytes of a role tag.
constexpr std::uint64_t tag_hash(std::string_view tag) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : tag) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Child stream seed for (parent, role tag, indices...).
///
///   h = mix64(parent ^ fnv1a(tag))
///   for each index i:  h = mix64(h ^ mix64(i))
///
/// The derivation is stable across platforms and runs, so every stream in a
/// simulation is addressed by its position in the seed tree rather than by the
/// order in which work happens to be scheduled.
Seed derive_seed(Seed parent, std::string_view tag,
                 std::initializer_list<std::uint64_t> indices = {}) noexcept;

/// Uniform double in [0, 1) computed directly from a seed (53 mantissa bits).
/// Used as a counter-based draw where a whole engine would be wasteful.
double unit_from_seed(Seed s) noexcept;

inline Engine make_engine(Seed s) { return Engine(s); }

/// Uniform double in [0, 1) from the top 53 bits of one engine output.
inline double uniform01(Engine& engine) {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

}  // namespace graphon_dyn
