#include "blockrecon/common/random.hpp"

#include "blockrecon/common/hash.hpp"

namespace blockrecon {

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream)
{
    return mix64(mix64(base) ^ mix64(stream + 0x632be59bd9b4e019ULL));
}

Rng make_rng(std::uint64_t base, std::uint64_t stream)
{
    return Rng(derive_seed(base, stream));
}

void fill_random(Rng& rng, std::span<std::uint8_t> out)
{
    std::size_t i = 0;
    while (i < out.size()) {
        std::uint64_t w = rng();
        for (int b = 0; b < 8 && i < out.size(); ++b, ++i) out[i] = static_cast<std::uint8_t>(w >> (8 * b));
    }
}

Bytes random_bytes(Rng& rng, std::size_t n)
{
    Bytes b(n);
    fill_random(rng, b);
    return b;
}

std::uint64_t uniform_int(Rng& rng, std::uint64_t lo, std::uint64_t hi)
{
    return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng);
}

} // namespace blockrecon
