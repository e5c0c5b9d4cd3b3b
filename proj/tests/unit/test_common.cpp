#include <gtest/gtest.h>

#include <set>

#include "blockrecon/common/bytes.hpp"
#include "blockrecon/common/hash.hpp"
#include "blockrecon/common/random.hpp"
#include "blockrecon/common/short_id.hpp"

using namespace blockrecon;

TEST(Bytes, LittleEndianRoundTrip)
{
    Bytes buf;
    ByteWriter w(buf);
    w.u8(0xab);
    w.u16(0x1234);
    w.u32(0xdeadbeef);
    w.i32(-7);
    w.u64(0x0102030405060708ULL);
    const std::uint8_t blob[] = {9, 8, 7};
    w.blob(blob);
    EXPECT_EQ(buf[1], 0x34);
    EXPECT_EQ(buf[2], 0x12);

    ByteReader r(buf);
    EXPECT_EQ(r.u8(), 0xab);
    EXPECT_EQ(r.u16(), 0x1234);
    EXPECT_EQ(r.u32(), 0xdeadbeefU);
    EXPECT_EQ(r.i32(), -7);
    EXPECT_EQ(r.u64(), 0x0102030405060708ULL);
    auto b = r.blob();
    ASSERT_EQ(b.size(), 3U);
    EXPECT_EQ(b[2], 7);
    EXPECT_NO_THROW(r.expect_done());
}

TEST(Bytes, TruncatedAndTrailing)
{
    Bytes buf{1, 2, 3};
    ByteReader r(buf);
    EXPECT_THROW(r.u32(), MalformedMessage);
    ByteReader r2(buf);
    r2.u16();
    EXPECT_THROW(r2.expect_done(), MalformedMessage);
}

TEST(Hash, KeyedHashDependsOnSeedAndTweak)
{
    const std::uint8_t data[] = {'a', 'b', 'c'};
    const auto h = keyed_hash64(1, 0, data);
    EXPECT_EQ(h, keyed_hash64(1, 0, data));
    EXPECT_NE(h, keyed_hash64(2, 0, data));
    EXPECT_NE(h, keyed_hash64(1, 1, data));
}

TEST(Hash, Hash256IsBlake2b256)
{
    // BLAKE2b-256 of the empty string.
    const auto h = hash256({});
    EXPECT_EQ(to_hex(h), "0e5751c026e543b2e8ab2eb06099daa1d1e5df47778f7787faab45cdf12fe3a8");
}

TEST(ShortIdTest, FirstFiveBytes)
{
    Hash32 h{};
    for (std::size_t i = 0; i < h.size(); ++i) h[i] = static_cast<std::uint8_t>(i + 1);
    const auto id = short_id_of(h);
    EXPECT_EQ(id[0], 1);
    EXPECT_EQ(id[4], 5);
    EXPECT_EQ(short_id_key(id), 0x0504030201ULL);
}

TEST(Random, DerivedStreamsAreDistinctAndStable)
{
    std::set<std::uint64_t> seen;
    for (std::uint64_t s = 0; s < 1000; ++s) seen.insert(derive_seed(42, s));
    EXPECT_EQ(seen.size(), 1000U);
    auto a = make_rng(5, 3);
    auto b = make_rng(5, 3);
    EXPECT_EQ(a(), b());
}

TEST(Random, UniformIntInRange)
{
    auto rng = make_rng(9);
    for (int i = 0; i < 10000; ++i) {
        const auto v = uniform_int(rng, 3, 7);
        EXPECT_GE(v, 3U);
        EXPECT_LE(v, 7U);
    }
}
