#include "blockrecon/ordering/lex.hpp"

#include <algorithm>
#include <numeric>

namespace blockrecon::ordering {

namespace {

class BitWriter {
public:
    explicit BitWriter(std::size_t bytes) : out_(bytes, 0) {}

    void put(std::uint64_t value, std::uint32_t width)
    {
        for (std::uint32_t i = width; i-- > 0;) {
            if ((value >> i) & 1U) out_[pos_ / 8] |= static_cast<std::uint8_t>(0x80U >> (pos_ % 8));
            ++pos_;
        }
    }

    Bytes take() { return std::move(out_); }

private:
    Bytes out_;
    std::size_t pos_ = 0;
};

class BitReader {
public:
    explicit BitReader(ByteView in) : in_(in) {}

    std::uint64_t get(std::uint32_t width)
    {
        std::uint64_t v = 0;
        for (std::uint32_t i = 0; i < width; ++i) {
            v = (v << 1) | ((in_[pos_ / 8] >> (7 - pos_ % 8)) & 1U);
            ++pos_;
        }
        return v;
    }

    bool rest_is_zero() const
    {
        for (std::size_t p = pos_; p < in_.size() * 8; ++p)
            if ((in_[p / 8] >> (7 - p % 8)) & 1U) return false;
        return true;
    }

private:
    ByteView in_;
    std::size_t pos_ = 0;
};

} // namespace

std::uint32_t index_bits(std::uint64_t n)
{
    std::uint32_t bits = 0;
    while (bits < 64 && (std::uint64_t{1} << bits) < n) ++bits;
    return bits;
}

std::size_t lex_payload_bytes(std::uint64_t n)
{
    return static_cast<std::size_t>((n * index_bits(n) + 7) / 8);
}

Bytes lex_order_encode(std::span<const ShortId> canonical)
{
    const std::size_t n = canonical.size();
    std::vector<std::uint32_t> by_id(n);
    std::iota(by_id.begin(), by_id.end(), 0U);
    std::sort(by_id.begin(), by_id.end(),
              [&](std::uint32_t a, std::uint32_t b) { return canonical[a] < canonical[b]; });
    for (std::size_t i = 1; i < n; ++i)
        if (canonical[by_id[i - 1]] == canonical[by_id[i]]) throw InvalidArgument("lex_order_encode: duplicate ShortId");

    const std::uint32_t bits = index_bits(n);
    BitWriter w(lex_payload_bytes(n));
    for (std::uint32_t pos : by_id) w.put(pos, bits);
    return w.take();
}

std::vector<ShortId> lex_order_decode(std::span<const ShortId> ids, ByteView payload)
{
    const std::size_t n = ids.size();
    if (payload.size() != lex_payload_bytes(n)) throw MalformedMessage("lex payload length does not match the id count");
    std::vector<ShortId> sorted(ids.begin(), ids.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw MalformedMessage("lex_order_decode: duplicate ShortId");

    const std::uint32_t bits = index_bits(n);
    BitReader r(payload);
    std::vector<ShortId> out(n);
    std::vector<bool> seen(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        const auto pos = r.get(bits);
        if (pos >= n || seen[pos]) throw MalformedMessage("lex payload holds an invalid position");
        seen[pos] = true;
        out[pos] = sorted[i];
    }
    if (!r.rest_is_zero()) throw MalformedMessage("lex payload has non-zero padding");
    return out;
}

} // namespace blockrecon::ordering
