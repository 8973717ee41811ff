#include "graphon_dyn/rng.hpp"

namespace graphon_dyn {

Seed derive_seed(Seed parent, std::string_view tag,
                 std::initializer_list<std::uint64_t> indices) noexcept {
  std::uint64_t h = mix64(parent ^ tag_hash(tag));
  for (std::uint64_t i : indices) h = mix64(h ^ mix64(i));
  return h;
}

double unit_from_seed(Seed s) noexcept {
  return static_cast<double>(mix64(s) >> 11) * 0x1.0p-53;
}

}  // namespace graphon_dyn
