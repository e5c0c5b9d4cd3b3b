#pragma once

#include <cstdint>

#include "blockrecon/common/bytes.hpp"

namespace blockrecon::filters {

/// Hash count minimising the false-positive rate of an m-bit filter holding n elements:
/// max(1, round(ln 2 * m / n)). Throws InvalidArgument when m or n is zero.
std::uint32_t bloom_optimal_k(std::uint64_t m, std::uint64_t n);

/// Analytic false-positive rate (1 - e^(-kn/m))^k.
double bloom_fpr(std::uint64_t m, std::uint64_t n, std::uint32_t k);

/// Bits needed for n elements at false-positive rate `fpr`: ceil(-n ln f / ln^2 2).
/// A rate of 1 or more needs a single bit (the filter then passes everything once non-empty).
std::uint64_t bloom_bits_for_fpr(std::uint64_t n, double fpr);

class BloomFilter {
public:
    static constexpr std::size_t kHeaderBytes = 4 + 1 + 8;

    BloomFilter(std::uint32_t bits, std::uint8_t k, std::uint64_t seed);

    /// Filter sized for `n` elements at target rate `fpr`, with k = bloom_optimal_k.
    static BloomFilter for_target_fpr(std::uint64_t n, double fpr, std::uint64_t seed);

    void insert(ByteView element);
    bool contains(ByteView element) const;

    std::uint32_t bit_count() const { return bits_; }
    std::uint8_t hash_count() const { return k_; }
    std::uint64_t seed() const { return seed_; }
    std::uint64_t inserted() const { return n_inserted_; }
    std::uint64_t popcount() const;

    /// m (u32 LE), k (u8), seed (u64 LE), then ceil(m/8) bytes, LSB-first within a byte.
    Bytes serialize() const;
    static BloomFilter deserialize(ByteView bytes);
    std::size_t serialized_size() const { return kHeaderBytes + data_.size(); }

    /// Bit-vector equality; the insert counter is not part of the wire image.
    bool same_bits(const BloomFilter& other) const
    {
        return bits_ == other.bits_ && k_ == other.k_ && seed_ == other.seed_ && data_ == other.data_;
    }

private:
    template <typename F>
    void for_each_index(ByteView element, F&& f) const;

    std::uint32_t bits_;
    std::uint8_t k_;
    std::uint64_t seed_;
    std::uint64_t n_inserted_ = 0;
    Bytes data_;
};

} // namespace blockrecon::filters
