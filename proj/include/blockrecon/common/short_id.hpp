#pragma once

#include <array>
#include <cstdint>
#include <functional>

#include "blockrecon/common/bytes.hpp"

namespace blockrecon {

using Hash32 = std::array<std::uint8_t, 32>;

constexpr std::size_t kShortIdBytes = 5;
using ShortId = std::array<std::uint8_t, kShortIdBytes>;

/// First five bytes of a transaction hash.
inline ShortId short_id_of(const Hash32& hash)
{
    ShortId id;
    for (std::size_t i = 0; i < kShortIdBytes; ++i) id[i] = hash[i];
    return id;
}

/// The ShortId packed into an integer (byte 0 lowest), for use as a hash-map key.
inline std::uint64_t short_id_key(const ShortId& id)
{
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < kShortIdBytes; ++i) v |= static_cast<std::uint64_t>(id[i]) << (8 * i);
    return v;
}

/// BLAKE2b-256.
Hash32 hash256(ByteView data);

struct Hash32Hasher {
    std::size_t operator()(const Hash32& h) const
    {
        std::size_t v = 0;
        for (std::size_t i = 0; i < sizeof(v); ++i) v |= static_cast<std::size_t>(h[i]) << (8 * i);
        return v;
    }
};

} // namespace blockrecon
