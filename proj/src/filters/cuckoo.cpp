#include "blockrecon/filters/cuckoo.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "blockrecon/common/hash.hpp"

namespace blockrecon::filters {

std::uint32_t cuckoo_fingerprint_bits(double target_fpr, std::uint32_t bucket_capacity)
{
    if (!(target_fpr > 0.0 && target_fpr < 1.0)) throw InvalidArgument("cuckoo: target fpr must lie in (0, 1)");
    const double bits = std::ceil(std::log2(2.0 * bucket_capacity / target_fpr));
    return static_cast<std::uint32_t>(std::clamp(bits, 1.0, 16.0));
}

CuckooFilter::CuckooFilter(const CuckooParams& params)
    : params_(params), mask_(params.bucket_count - 1),
      slots_(static_cast<std::size_t>(params.bucket_count) * params.bucket_capacity, 0),
      kick_rng_(derive_seed(params.seed, 0x6b69636bULL))
{
    if (params.bucket_count == 0 || !std::has_single_bit(params.bucket_count))
        throw InvalidArgument("cuckoo: bucket_count must be a power of two");
    if (params.bucket_capacity == 0) throw InvalidArgument("cuckoo: bucket_capacity must be at least 1");
    if (params.fingerprint_bits == 0 || params.fingerprint_bits > 16)
        throw InvalidArgument("cuckoo: fingerprint_bits must lie in 1..16");
}

CuckooFilter CuckooFilter::for_capacity(std::size_t items, std::uint32_t fingerprint_bits, std::uint64_t seed,
                                        double max_load)
{
    CuckooParams p;
    p.fingerprint_bits = fingerprint_bits;
    p.seed = seed;
    const double buckets = std::ceil(static_cast<double>(items) / (p.bucket_capacity * max_load));
    p.bucket_count = std::bit_ceil(std::max<std::uint32_t>(1, static_cast<std::uint32_t>(buckets)));
    return CuckooFilter(p);
}

CuckooFilter::Probe CuckooFilter::probe(ByteView element) const
{
    const std::uint64_t h = keyed_hash64(params_.seed, 0, element);
    // Zero marks an empty slot, so fingerprints live in [1, 2^f - 1].
    const std::uint64_t span = (1ULL << params_.fingerprint_bits) - 1;
    const auto fp = static_cast<std::uint16_t>(span == 0 ? 1 : (h >> 32) % span + 1);
    return {static_cast<std::uint32_t>(h) & mask_, fp};
}

std::uint32_t CuckooFilter::alternate(std::uint32_t index, std::uint16_t fp) const
{
    return (index ^ static_cast<std::uint32_t>(fp * 0x5bd1e995u)) & mask_;
}

bool CuckooFilter::place(std::uint32_t index, std::uint16_t fp)
{
    auto* b = &slots_[static_cast<std::size_t>(index) * params_.bucket_capacity];
    for (std::uint32_t s = 0; s < params_.bucket_capacity; ++s) {
        if (b[s] == 0) {
            b[s] = fp;
            ++occupied_;
            return true;
        }
    }
    return false;
}

bool CuckooFilter::holds(std::uint32_t index, std::uint16_t fp) const
{
    const auto* b = &slots_[static_cast<std::size_t>(index) * params_.bucket_capacity];
    return std::find(b, b + params_.bucket_capacity, fp) != b + params_.bucket_capacity;
}

bool CuckooFilter::insert(ByteView element)
{
    const auto [i1, fp] = probe(element);
    const std::uint32_t i2 = alternate(i1, fp);
    if (place(i1, fp) || place(i2, fp)) return true;

    struct Swap {
        std::size_t slot;
        std::uint16_t previous;
    };
    std::vector<Swap> log;
    log.reserve(params_.max_kicks);

    std::uint32_t index = (kick_rng_() & 1) ? i1 : i2;
    std::uint16_t carried = fp;
    for (std::uint32_t kick = 0; kick < params_.max_kicks; ++kick) {
        const std::size_t slot = static_cast<std::size_t>(index) * params_.bucket_capacity +
                                 static_cast<std::size_t>(kick_rng_() % params_.bucket_capacity);
        log.push_back({slot, slots_[slot]});
        std::swap(carried, slots_[slot]);
        index = alternate(index, carried);
        if (place(index, carried)) return true;
    }
    // Out of budget: undo the relocation chain so every resident fingerprint stays reachable.
    for (auto it = log.rbegin(); it != log.rend(); ++it) slots_[it->slot] = it->previous;
    return false;
}

bool CuckooFilter::contains(ByteView element) const
{
    const auto [i1, fp] = probe(element);
    return holds(i1, fp) || holds(alternate(i1, fp), fp);
}

bool CuckooFilter::erase(ByteView element)
{
    const auto [i1, fp] = probe(element);
    for (std::uint32_t index : {i1, alternate(i1, fp)}) {
        auto* b = &slots_[static_cast<std::size_t>(index) * params_.bucket_capacity];
        for (std::uint32_t s = 0; s < params_.bucket_capacity; ++s) {
            if (b[s] == fp) {
                b[s] = 0;
                --occupied_;
                return true;
            }
        }
    }
    return false;
}

std::vector<std::uint16_t> CuckooFilter::bucket(std::uint32_t index) const
{
    std::vector<std::uint16_t> out;
    const auto* b = &slots_[static_cast<std::size_t>(index & mask_) * params_.bucket_capacity];
    for (std::uint32_t s = 0; s < params_.bucket_capacity; ++s)
        if (b[s] != 0) out.push_back(b[s]);
    std::sort(out.begin(), out.end());
    return out;
}

std::pair<std::uint32_t, std::uint16_t> CuckooFilter::canonical_key(ByteView element) const
{
    const auto [i1, fp] = probe(element);
    return {std::min(i1, alternate(i1, fp)), fp};
}

std::vector<std::pair<std::uint32_t, std::uint16_t>> CuckooFilter::canonical_contents() const
{
    std::vector<std::pair<std::uint32_t, std::uint16_t>> out;
    out.reserve(occupied_);
    for (std::size_t slot = 0; slot < slots_.size(); ++slot) {
        const std::uint16_t fp = slots_[slot];
        if (fp == 0) continue;
        const auto index = static_cast<std::uint32_t>(slot / params_.bucket_capacity);
        out.emplace_back(std::min(index, alternate(index, fp)), fp);
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace blockrecon::filters
