#pragma once

#include <cstdint>

#include "blockrecon/common/bytes.hpp"

namespace blockrecon {

/// Keyed 64-bit hash (SipHash-2-4) of `data`. `seed` and `tweak` form the 128-bit key, so
/// independent hash functions over the same seed are obtained by varying `tweak`.
std::uint64_t keyed_hash64(std::uint64_t seed, std::uint64_t tweak, ByteView data);

/// SplitMix64 finalizer; a bijective 64-bit mixer.
constexpr std::uint64_t mix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

} // namespace blockrecon
