#include "blockrecon/iblt/iblt.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <queue>

#include "blockrecon/common/hash.hpp"

namespace blockrecon::iblt {

namespace {

constexpr std::uint64_t kKeyHashTweak = 0x69626c74ULL; // "iblt"

std::uint64_t key_hash(std::uint64_t seed, ByteView key)
{
    return keyed_hash64(seed, kKeyHashTweak, key);
}

std::uint32_t checksum_of(std::uint64_t h)
{
    return static_cast<std::uint32_t>(mix64(h ^ 0xc3a5c85c97cb3127ULL) >> 32);
}

void xor_into(std::uint8_t* dst, ByteView src)
{
    for (std::size_t i = 0; i < src.size(); ++i) dst[i] ^= src[i];
}

} // namespace

std::uint32_t iblt_sizing(std::uint64_t d, std::uint32_t k, double multiplier)
{
    if (k == 0) throw InvalidArgument("iblt_sizing: k must be at least 1");
    const double scaled = std::ceil(multiplier * static_cast<double>(d) - 1e-9);
    const auto cells = std::max<std::uint64_t>(k, scaled < 0 ? 0 : static_cast<std::uint64_t>(scaled));
    const std::uint64_t rounded = (cells + k - 1) / k * k;
    if (rounded > 0xffffffffULL) throw InvalidArgument("iblt_sizing: difference too large");
    return static_cast<std::uint32_t>(rounded);
}

Iblt::Iblt(const IbltParams& params)
    : params_(params), counts_(params.cell_count, 0),
      key_sums_(static_cast<std::size_t>(params.cell_count) * params.key_width, 0), hash_sums_(params.cell_count, 0),
      value_sums_(static_cast<std::size_t>(params.cell_count) * params.value_width, 0)
{
    if (params.k == 0) throw InvalidArgument("Iblt: k must be at least 1");
    if (params.key_width == 0) throw InvalidArgument("Iblt: key_width must be at least 1");
    if (params.cell_count < params.k) throw InvalidArgument("Iblt: need at least k cells for distinct indices");
}

std::vector<std::uint32_t> Iblt::cell_indices(ByteView key) const
{
    const std::uint64_t h = key_hash(params_.seed, key);
    std::vector<std::uint32_t> out;
    out.reserve(params_.k);
    // Re-hash with a running counter until k distinct cells are found.
    for (std::uint64_t ctr = 0; out.size() < params_.k; ++ctr) {
        const auto cell = static_cast<std::uint32_t>(mix64(h + ctr * 0x9e3779b97f4a7c15ULL) % params_.cell_count);
        if (std::find(out.begin(), out.end(), cell) == out.end()) out.push_back(cell);
    }
    return out;
}

std::uint32_t Iblt::key_checksum(ByteView key) const
{
    return checksum_of(key_hash(params_.seed, key));
}

ByteView Iblt::key_sum(std::uint32_t cell) const
{
    return ByteView(key_sums_).subspan(static_cast<std::size_t>(cell) * params_.key_width, params_.key_width);
}

ByteView Iblt::value_sum(std::uint32_t cell) const
{
    return ByteView(value_sums_).subspan(static_cast<std::size_t>(cell) * params_.value_width, params_.value_width);
}

std::span<std::uint8_t> Iblt::mutable_value_sum(std::uint32_t cell)
{
    return std::span<std::uint8_t>(value_sums_).subspan(static_cast<std::size_t>(cell) * params_.value_width,
                                                         params_.value_width);
}

void Iblt::check_widths(ByteView key, ByteView value) const
{
    if (key.size() != params_.key_width) throw InvalidArgument("Iblt: key width mismatch");
    if (value.size() != params_.value_width && !(value.empty() && params_.value_width == 0))
        throw InvalidArgument("Iblt: value width mismatch");
}

void Iblt::apply_at(std::uint32_t cell, ByteView key, std::uint32_t checksum, ByteView value, std::int32_t sign)
{
    counts_[cell] += sign;
    xor_into(&key_sums_[static_cast<std::size_t>(cell) * params_.key_width], key);
    hash_sums_[cell] ^= checksum;
    if (params_.value_width != 0)
        xor_into(&value_sums_[static_cast<std::size_t>(cell) * params_.value_width], value);
}

void Iblt::apply(ByteView key, ByteView value, std::int32_t sign)
{
    check_widths(key, value);
    const std::uint32_t checksum = key_checksum(key);
    for (std::uint32_t cell : cell_indices(key)) apply_at(cell, key, checksum, value, sign);
}

void Iblt::insert(ByteView key, ByteView value) { apply(key, value, +1); }

void Iblt::erase(ByteView key, ByteView value) { apply(key, value, -1); }

Iblt Iblt::subtract(const Iblt& other) const
{
    if (!(params_ == other.params_)) throw ParameterMismatch("Iblt::subtract: tables differ in geometry or seed");
    Iblt out = *this;
    for (std::uint32_t c = 0; c < params_.cell_count; ++c) {
        out.counts_[c] -= other.counts_[c];
        out.hash_sums_[c] ^= other.hash_sums_[c];
    }
    for (std::size_t i = 0; i < key_sums_.size(); ++i) out.key_sums_[i] ^= other.key_sums_[i];
    for (std::size_t i = 0; i < value_sums_.size(); ++i) out.value_sums_[i] ^= other.value_sums_[i];
    return out;
}

bool Iblt::cell_empty(std::uint32_t cell) const
{
    if (counts_[cell] != 0 || hash_sums_[cell] != 0) return false;
    const auto zero = [](std::uint8_t b) { return b == 0; };
    return std::all_of(key_sum(cell).begin(), key_sum(cell).end(), zero) &&
           std::all_of(value_sum(cell).begin(), value_sum(cell).end(), zero);
}

bool Iblt::is_pure(std::uint32_t cell) const
{
    if (counts_[cell] != 1 && counts_[cell] != -1) return false;
    return key_checksum(key_sum(cell)) == hash_sums_[cell];
}

bool Iblt::empty() const
{
    for (std::uint32_t c = 0; c < params_.cell_count; ++c)
        if (!cell_empty(c)) return false;
    return true;
}

DecodeResult Iblt::decode() const
{
    Iblt work = *this;
    DecodeResult result;
    std::priority_queue<std::uint32_t, std::vector<std::uint32_t>, std::greater<>> ready;
    for (std::uint32_t c = 0; c < params_.cell_count; ++c)
        if (work.is_pure(c)) ready.push(c);

    // A checksum collision can fake purity; bound the work so such a cycle cannot spin forever.
    std::uint64_t budget = 8ULL * params_.cell_count + 64;
    while (!ready.empty() && budget-- > 0) {
        const std::uint32_t cell = ready.top();
        ready.pop();
        if (!work.is_pure(cell)) continue;

        Bytes key(work.key_sum(cell).begin(), work.key_sum(cell).end());
        Bytes value(work.value_sum(cell).begin(), work.value_sum(cell).end());
        const auto indices = work.cell_indices(key);
        // The key of a genuinely pure cell hashes back to that cell.
        if (std::find(indices.begin(), indices.end(), cell) == indices.end()) continue;

        const std::int32_t sign = work.counts_[cell];
        const std::uint32_t checksum = work.hash_sums_[cell];
        for (std::uint32_t c : indices) {
            work.apply_at(c, key, checksum, value, -sign);
            if (work.is_pure(c)) ready.push(c);
        }
        (sign > 0 ? result.only_in_a : result.only_in_b).push_back({std::move(key), std::move(value)});
    }
    result.complete = work.empty();
    std::sort(result.only_in_a.begin(), result.only_in_a.end());
    std::sort(result.only_in_b.begin(), result.only_in_b.end());
    return result;
}

Iblt Iblt::without_values() const
{
    IbltParams p = params_;
    p.value_width = 0;
    Iblt out(p);
    out.counts_ = counts_;
    out.key_sums_ = key_sums_;
    out.hash_sums_ = hash_sums_;
    return out;
}

Bytes Iblt::serialize() const
{
    Bytes out;
    out.reserve(serialized_size());
    ByteWriter w(out);
    w.u32(params_.cell_count);
    w.u8(params_.k);
    w.u8(params_.key_width);
    w.u8(params_.value_width);
    w.u64(params_.seed);
    for (std::uint32_t c = 0; c < params_.cell_count; ++c) {
        w.i32(counts_[c]);
        w.raw(key_sum(c));
        w.u32(hash_sums_[c]);
        w.raw(value_sum(c));
    }
    return out;
}

Iblt Iblt::deserialize(ByteView bytes)
{
    ByteReader r(bytes);
    IbltParams p;
    p.cell_count = r.u32();
    p.k = r.u8();
    p.key_width = r.u8();
    p.value_width = r.u8();
    p.seed = r.u64();
    if (p.k == 0 || p.key_width == 0 || p.cell_count < p.k) throw MalformedMessage("iblt header is inconsistent");
    if (r.remaining() != static_cast<std::size_t>(p.cell_count) * cell_bytes(p.key_width, p.value_width))
        throw MalformedMessage("iblt body length does not match its header");
    Iblt t(p);
    for (std::uint32_t c = 0; c < p.cell_count; ++c) {
        t.counts_[c] = r.i32();
        auto key = r.raw(p.key_width);
        std::copy(key.begin(), key.end(), t.key_sums_.begin() + static_cast<std::ptrdiff_t>(c) * p.key_width);
        t.hash_sums_[c] = r.u32();
        auto value = r.raw(p.value_width);
        std::copy(value.begin(), value.end(), t.value_sums_.begin() + static_cast<std::ptrdiff_t>(c) * p.value_width);
    }
    return t;
}

} // namespace blockrecon::iblt
