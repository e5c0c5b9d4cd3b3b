#include "blockrecon/common/hash.hpp"
#include "blockrecon/common/short_id.hpp"

#include <sodium.h>

#include <array>
#include <cstdio>
#include <mutex>

namespace blockrecon {

namespace {

void ensure_sodium()
{
    static std::once_flag once;
    std::call_once(once, [] {
        if (sodium_init() < 0) throw Error("libsodium failed to initialise");
    });
}

} // namespace

std::uint64_t keyed_hash64(std::uint64_t seed, std::uint64_t tweak, ByteView data)
{
    ensure_sodium();
    std::array<unsigned char, crypto_shorthash_KEYBYTES> key{};
    for (int i = 0; i < 8; ++i) {
        key[i] = static_cast<unsigned char>(seed >> (8 * i));
        key[8 + i] = static_cast<unsigned char>(tweak >> (8 * i));
    }
    std::array<unsigned char, crypto_shorthash_BYTES> out{};
    crypto_shorthash(out.data(), data.data(), data.size(), key.data());
    std::uint64_t h = 0;
    for (int i = 0; i < 8; ++i) h |= static_cast<std::uint64_t>(out[i]) << (8 * i);
    return h;
}

Hash32 hash256(ByteView data)
{
    ensure_sodium();
    Hash32 out{};
    crypto_generichash(out.data(), out.size(), data.data(), data.size(), nullptr, 0);
    return out;
}

std::string to_hex(ByteView v)
{
    static constexpr char digits[] = "0123456789abcdef";
    std::string s;
    s.reserve(v.size() * 2);
    for (auto b : v) {
        s.push_back(digits[b >> 4]);
        s.push_back(digits[b & 0xf]);
    }
    return s;
}

} // namespace blockrecon
