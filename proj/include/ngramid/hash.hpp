#pragma once

#include <cstdint>
#include <string_view>

namespace ngramid {

// 64-bit FNV-1a. Used wherever a stable, platform-independent hash of text is
// needed (perturbation streams, train/test splitting, checksums).
constexpr std::uint64_t kFnvBasis = 0xcbf29ce484222325ULL;
constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;

constexpr std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t h = kFnvBasis) {
  for (char c : bytes) {
    h ^= static_cast<unsigned char>(c);
    h *= kFnvPrime;
  }
  return h;
}

}  // namespace ngramid
