#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "blockrecon/common/error.hpp"

namespace blockrecon {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

/// Appends little-endian integers and length-prefixed blobs to a byte buffer.
class ByteWriter {
public:
    explicit ByteWriter(Bytes& out) : out_(out) {}

    void u8(std::uint8_t v) { out_.push_back(v); }
    void u16(std::uint16_t v) { put_le(v, 2); }
    void u32(std::uint32_t v) { put_le(v, 4); }
    void i32(std::int32_t v) { put_le(static_cast<std::uint32_t>(v), 4); }
    void u64(std::uint64_t v) { put_le(v, 8); }
    void raw(ByteView v) { out_.insert(out_.end(), v.begin(), v.end()); }
    /// u32 length prefix followed by the bytes.
    void blob(ByteView v)
    {
        u32(static_cast<std::uint32_t>(v.size()));
        raw(v);
    }

private:
    void put_le(std::uint64_t v, int width)
    {
        for (int i = 0; i < width; ++i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }

    Bytes& out_;
};

/// Bounds-checked little-endian reader. Every overrun throws MalformedMessage.
class ByteReader {
public:
    explicit ByteReader(ByteView in) : in_(in) {}

    std::uint8_t u8() { return static_cast<std::uint8_t>(get_le(1)); }
    std::uint16_t u16() { return static_cast<std::uint16_t>(get_le(2)); }
    std::uint32_t u32() { return static_cast<std::uint32_t>(get_le(4)); }
    std::int32_t i32() { return static_cast<std::int32_t>(static_cast<std::uint32_t>(get_le(4))); }
    std::uint64_t u64() { return get_le(8); }
    ByteView raw(std::size_t n)
    {
        need(n);
        auto v = in_.subspan(pos_, n);
        pos_ += n;
        return v;
    }
    ByteView blob() { return raw(u32()); }

    std::size_t remaining() const { return in_.size() - pos_; }
    bool done() const { return pos_ == in_.size(); }
    void expect_done() const
    {
        if (!done()) throw MalformedMessage("trailing bytes after message body");
    }

private:
    void need(std::size_t n) const
    {
        if (n > remaining()) throw MalformedMessage("message truncated");
    }
    std::uint64_t get_le(int width)
    {
        need(static_cast<std::size_t>(width));
        std::uint64_t v = 0;
        for (int i = 0; i < width; ++i) v |= static_cast<std::uint64_t>(in_[pos_ + i]) << (8 * i);
        pos_ += static_cast<std::size_t>(width);
        return v;
    }

    ByteView in_;
    std::size_t pos_ = 0;
};

std::string to_hex(ByteView v);

} // namespace blockrecon
