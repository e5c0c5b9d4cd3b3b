#include "blockrecon/filters/bloom.hpp"

#include <bit>
#include <cmath>
#include <numbers>

#include "blockrecon/common/hash.hpp"

namespace blockrecon::filters {

std::uint32_t bloom_optimal_k(std::uint64_t m, std::uint64_t n)
{
    if (m == 0) throw InvalidArgument("bloom_optimal_k: m must be at least 1");
    if (n == 0) throw InvalidArgument("bloom_optimal_k: n must be at least 1");
    const double k = std::round(std::numbers::ln2 * static_cast<double>(m) / static_cast<double>(n));
    return k < 1.0 ? 1u : static_cast<std::uint32_t>(k);
}

double bloom_fpr(std::uint64_t m, std::uint64_t n, std::uint32_t k)
{
    if (n == 0) return 0.0;
    const double unset = std::exp(-static_cast<double>(k) * static_cast<double>(n) / static_cast<double>(m));
    return std::pow(1.0 - unset, static_cast<double>(k));
}

std::uint64_t bloom_bits_for_fpr(std::uint64_t n, double fpr)
{
    if (n == 0 || fpr >= 1.0) return 1;
    if (fpr <= 0.0) throw InvalidArgument("bloom_bits_for_fpr: target rate must be positive");
    const double ln2sq = std::numbers::ln2 * std::numbers::ln2;
    const double bits = std::ceil(-static_cast<double>(n) * std::log(fpr) / ln2sq);
    return bits < 1.0 ? 1 : static_cast<std::uint64_t>(bits);
}

BloomFilter::BloomFilter(std::uint32_t bits, std::uint8_t k, std::uint64_t seed)
    : bits_(bits), k_(k), seed_(seed), data_((static_cast<std::size_t>(bits) + 7) / 8, 0)
{
    if (bits == 0) throw InvalidArgument("BloomFilter: m must be at least 1");
    if (k == 0) throw InvalidArgument("BloomFilter: k must be at least 1");
}

BloomFilter BloomFilter::for_target_fpr(std::uint64_t n, double fpr, std::uint64_t seed)
{
    const std::uint64_t bits = bloom_bits_for_fpr(n, fpr);
    if (bits > 0xffffffffULL) throw InvalidArgument("BloomFilter: target needs more than 2^32 bits");
    const std::uint32_t k = n == 0 ? 1 : std::min<std::uint32_t>(255, bloom_optimal_k(bits, n));
    return BloomFilter(static_cast<std::uint32_t>(bits), static_cast<std::uint8_t>(k), seed);
}

template <typename F>
void BloomFilter::for_each_index(ByteView element, F&& f) const
{
    // enhanced double hashing: h_i = h1 + i*h2 + (i^3 - i)/6 (mod m)
    const std::uint64_t m = bits_;
    std::uint64_t a = keyed_hash64(seed_, 0, element) % m;
    std::uint64_t b = mix64(keyed_hash64(seed_, 0, element)) % m;
    for (std::uint32_t i = 0; i < k_; ++i) {
        f(a);
        a = (a + b) % m;
        b = (b + i + 1) % m;
    }
}

void BloomFilter::insert(ByteView element)
{
    for_each_index(element, [this](std::uint64_t bit) { data_[bit >> 3] |= static_cast<std::uint8_t>(1u << (bit & 7)); });
    ++n_inserted_;
}

bool BloomFilter::contains(ByteView element) const
{
    bool all = true;
    for_each_index(element, [&](std::uint64_t bit) {
        if (!(data_[bit >> 3] & (1u << (bit & 7)))) all = false;
    });
    return all;
}

std::uint64_t BloomFilter::popcount() const
{
    std::uint64_t c = 0;
    for (auto b : data_) c += static_cast<std::uint64_t>(std::popcount(b));
    return c;
}

Bytes BloomFilter::serialize() const
{
    Bytes out;
    out.reserve(serialized_size());
    ByteWriter w(out);
    w.u32(bits_);
    w.u8(k_);
    w.u64(seed_);
    w.raw(data_);
    return out;
}

BloomFilter BloomFilter::deserialize(ByteView bytes)
{
    ByteReader r(bytes);
    const std::uint32_t bits = r.u32();
    const std::uint8_t k = r.u8();
    const std::uint64_t seed = r.u64();
    if (bits == 0 || k == 0) throw MalformedMessage("bloom filter header has zero m or k");
    BloomFilter f(bits, k, seed);
    auto body = r.raw(f.data_.size());
    r.expect_done();
    f.data_.assign(body.begin(), body.end());
    if (bits % 8 != 0 && (f.data_.back() >> (bits % 8)) != 0)
        throw MalformedMessage("bloom filter has bits set past m");
    return f;
}

} // namespace blockrecon::filters
