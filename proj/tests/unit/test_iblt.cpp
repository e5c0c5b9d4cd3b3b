#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "blockrecon/common/random.hpp"
#include "blockrecon/iblt/iblt.hpp"

using namespace blockrecon;
using namespace blockrecon::iblt;

namespace {

Bytes key8(std::uint64_t v)
{
    Bytes b(8);
    for (int i = 0; i < 8; ++i) b[i] = static_cast<std::uint8_t>(v >> (8 * i));
    return b;
}

struct Sets {
    std::set<std::uint64_t> a, b;
};

Sets random_sets(std::uint64_t seed, std::size_t common, std::size_t only_a, std::size_t only_b)
{
    auto rng = make_rng(seed);
    std::set<std::uint64_t> all;
    while (all.size() < common + only_a + only_b) all.insert(rng());
    std::vector<std::uint64_t> v(all.begin(), all.end());
    std::shuffle(v.begin(), v.end(), rng);
    Sets s;
    for (std::size_t i = 0; i < common; ++i) {
        s.a.insert(v[i]);
        s.b.insert(v[i]);
    }
    for (std::size_t i = 0; i < only_a; ++i) s.a.insert(v[common + i]);
    for (std::size_t i = 0; i < only_b; ++i) s.b.insert(v[common + only_a + i]);
    return s;
}

std::vector<Bytes> oracle_difference(const std::set<std::uint64_t>& x, const std::set<std::uint64_t>& y)
{
    std::vector<std::uint64_t> d;
    std::set_difference(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(d));
    std::vector<Bytes> out;
    for (auto v : d) out.push_back(key8(v));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Bytes> keys_of(const std::vector<KeyValue>& kv)
{
    std::vector<Bytes> out;
    for (const auto& e : kv) out.push_back(e.key);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

TEST(IbltSizing, RoundsUpToMultipleOfK)
{
    EXPECT_EQ(iblt_sizing(10, 3, 1.5), 15U);
    EXPECT_EQ(iblt_sizing(11, 3, 1.5), 18U);
    EXPECT_EQ(iblt_sizing(0, 3, 1.5), 3U);
    EXPECT_EQ(iblt_sizing(20, 4, 2.0), 40U);
    EXPECT_THROW(iblt_sizing(5, 0), InvalidArgument);
}

TEST(Iblt, RejectsBadParams)
{
    EXPECT_THROW(Iblt(IbltParams{2, 3, 8, 0, 0}), InvalidArgument);
    EXPECT_THROW(Iblt(IbltParams{10, 3, 0, 0, 0}), InvalidArgument);
    Iblt t(IbltParams{10, 3, 8, 0, 0});
    EXPECT_THROW(t.insert(Bytes(7)), InvalidArgument);
}

TEST(Iblt, CellIndicesDistinctAndInRange)
{
    Iblt t(IbltParams{7, 3, 8, 0, 42});
    for (std::uint64_t i = 0; i < 500; ++i) {
        auto idx = t.cell_indices(key8(i));
        ASSERT_EQ(idx.size(), 3U);
        std::set<std::uint32_t> s(idx.begin(), idx.end());
        EXPECT_EQ(s.size(), 3U);
        for (auto c : idx) EXPECT_LT(c, 7U);
    }
}

TEST(Iblt, InsertEraseCancels)
{
    Iblt t(IbltParams{30, 3, 8, 4, 1});
    const Bytes v{1, 2, 3, 4};
    for (std::uint64_t i = 0; i < 100; ++i) t.insert(key8(i), v);
    EXPECT_FALSE(t.empty());
    for (std::uint64_t i = 0; i < 100; ++i) t.erase(key8(i), v);
    EXPECT_TRUE(t.empty());
}

TEST(Iblt, SingleInsertIsPureInEveryCell)
{
    Iblt t(IbltParams{12, 3, 8, 0, 3});
    t.insert(key8(99));
    for (auto c : t.cell_indices(key8(99))) {
        EXPECT_EQ(t.count(c), 1);
        EXPECT_TRUE(t.is_pure(c));
        EXPECT_EQ(t.hash_sum(c), t.key_checksum(key8(99)));
    }
}

TEST(Iblt, DecodeMatchesBruteForce)
{
    for (std::uint64_t trial = 0; trial < 50; ++trial) {
        const auto s = random_sets(trial, 300, 7, 5);
        const IbltParams p{iblt_sizing(12, 3, 2.5), 3, 8, 0, trial};
        Iblt ta(p), tb(p);
        for (auto v : s.a) ta.insert(key8(v));
        for (auto v : s.b) tb.insert(key8(v));
        const auto r = ta.subtract(tb).decode();
        if (!r.complete) continue; // a stall is allowed; a wrong answer is not
        EXPECT_EQ(keys_of(r.only_in_a), oracle_difference(s.a, s.b));
        EXPECT_EQ(keys_of(r.only_in_b), oracle_difference(s.b, s.a));
    }
}

TEST(Iblt, GenerousSizingAlwaysDecodes)
{
    int ok = 0;
    for (std::uint64_t trial = 0; trial < 200; ++trial) {
        const auto s = random_sets(1000 + trial, 200, 10, 10);
        const IbltParams p{60, 3, 8, 0, trial};
        Iblt ta(p), tb(p);
        for (auto v : s.a) ta.insert(key8(v));
        for (auto v : s.b) tb.insert(key8(v));
        const auto r = ta.subtract(tb).decode();
        if (r.complete && keys_of(r.only_in_a) == oracle_difference(s.a, s.b) &&
            keys_of(r.only_in_b) == oracle_difference(s.b, s.a))
            ++ok;
    }
    EXPECT_GE(ok, 198);
}

TEST(Iblt, OverloadedTableReportsIncomplete)
{
    const auto s = random_sets(5, 10, 40, 40);
    const IbltParams p{12, 3, 8, 0, 5};
    Iblt ta(p), tb(p);
    for (auto v : s.a) ta.insert(key8(v));
    for (auto v : s.b) tb.insert(key8(v));
    EXPECT_FALSE(ta.subtract(tb).decode().complete);
}

TEST(Iblt, ValuesTravelWithKeys)
{
    const IbltParams p{30, 3, 8, 2, 8};
    Iblt t(p);
    t.insert(key8(1), Bytes{0xaa, 0x01});
    t.insert(key8(2), Bytes{0xbb, 0x02});
    const auto r = t.decode();
    ASSERT_TRUE(r.complete);
    ASSERT_EQ(r.only_in_a.size(), 2U);
    EXPECT_EQ(r.only_in_a[0].key, key8(1));
    EXPECT_EQ(r.only_in_a[0].value, (Bytes{0xaa, 0x01}));
    EXPECT_TRUE(r.only_in_b.empty());
}

TEST(Iblt, SubtractRequiresSameGeometry)
{
    Iblt a(IbltParams{12, 3, 8, 0, 1});
    Iblt b(IbltParams{12, 3, 8, 0, 2});
    Iblt c(IbltParams{15, 3, 8, 0, 1});
    EXPECT_THROW(a.subtract(b), ParameterMismatch);
    EXPECT_THROW(a.subtract(c), ParameterMismatch);
}

TEST(Iblt, SerializeRoundTrip)
{
    Iblt t(IbltParams{21, 3, 5, 3, 77});
    for (std::uint64_t i = 0; i < 9; ++i) t.insert(Bytes{1, 2, 3, 4, static_cast<std::uint8_t>(i)}, Bytes{7, 7, 7});
    t.erase(Bytes{9, 9, 9, 9, 9}, Bytes{1, 1, 1});
    const auto bytes = t.serialize();
    EXPECT_EQ(bytes.size(), t.serialized_size());
    EXPECT_EQ(bytes.size(), Iblt::kHeaderBytes + 21 * cell_bytes(5, 3));
    EXPECT_EQ(Iblt::deserialize(bytes), t);

    auto bad = bytes;
    bad.push_back(0);
    EXPECT_THROW(Iblt::deserialize(bad), MalformedMessage);
    bad.resize(5);
    EXPECT_THROW(Iblt::deserialize(bad), MalformedMessage);
}

TEST(Iblt, WithoutValuesKeepsKeys)
{
    Iblt t(IbltParams{15, 3, 8, 4, 2});
    t.insert(key8(5), Bytes{1, 2, 3, 4});
    const auto bare = t.without_values();
    EXPECT_EQ(bare.params().value_width, 0);
    const auto r = bare.decode();
    ASSERT_TRUE(r.complete);
    ASSERT_EQ(r.only_in_a.size(), 1U);
    EXPECT_EQ(r.only_in_a[0].key, key8(5));
}
