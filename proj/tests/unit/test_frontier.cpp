#include <gtest/gtest.h>

#include <sstream>

#include "blockrecon/common/random.hpp"
#include "blockrecon/frontier/frontier.hpp"

using namespace blockrecon;
using namespace blockrecon::frontier;

namespace {

FrontierSnapshot random_snapshot(Rng& rng, std::size_t n)
{
    FrontierSnapshot s;
    for (std::size_t i = 0; i < n; ++i) {
        FrontierEntry e;
        fill_random(rng, e.head_hash);
        fill_random(rng, e.account);
        s.entries.push_back(e);
    }
    return s;
}

// Advance `changes` accounts to fresh heads.
FrontierSnapshot advance(Rng& rng, FrontierSnapshot s, std::size_t changes)
{
    for (std::size_t i = 0; i < changes; ++i) fill_random(rng, s.entries[i * 7 % s.entries.size()].head_hash);
    return s;
}

} // namespace

TEST(Frontier, ReconcileMatchesSortedDiffOracle)
{
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto rng = make_rng(seed);
        const auto mine = random_snapshot(rng, 2000);
        const auto theirs = advance(rng, mine, 15);
        const auto bytes = frontier_delta_encode(theirs, 15, seed, 2.0);
        const auto got = frontier_reconcile(mine, bytes);
        if (!got.complete) continue;
        const auto want = snapshot_difference(mine, theirs);
        EXPECT_EQ(got.changed_heads, want.changed_heads);
        EXPECT_EQ(got.my_stale, want.my_stale);
        EXPECT_EQ(want.changed_heads.size(), 15U);
    }
}

TEST(Frontier, IdenticalSnapshotsGiveEmptyDelta)
{
    auto rng = make_rng(1);
    const auto s = random_snapshot(rng, 500);
    const auto r = frontier_reconcile(s, frontier_delta_encode(s, 0, 3));
    EXPECT_TRUE(r.complete);
    EXPECT_TRUE(r.changed_heads.empty());
    EXPECT_TRUE(r.my_stale.empty());
}

TEST(Frontier, EncodedSizeIsIndependentOfAccountCount)
{
    auto rng = make_rng(2);
    const auto small = random_snapshot(rng, 100);
    const auto big = random_snapshot(rng, 5000);
    EXPECT_EQ(frontier_delta_encode(small, 10, 1).size(), frontier_delta_encode(big, 10, 1).size());
    EXPECT_EQ(frontier_delta_encode(big, 10, 1).size(), iblt::Iblt::kHeaderBytes + 30 * kCellBytes);
}

TEST(Frontier, RejectsForeignTable)
{
    auto rng = make_rng(3);
    const auto s = random_snapshot(rng, 10);
    iblt::Iblt other(iblt::IbltParams{12, 3, 8, 0, 1});
    EXPECT_THROW(frontier_reconcile(s, other.serialize()), ParameterMismatch);
}

TEST(Frontier, ValidateRejectsDuplicates)
{
    auto rng = make_rng(4);
    auto s = random_snapshot(rng, 3);
    EXPECT_NO_THROW(s.validate());
    s.entries[1].account = s.entries[0].account;
    EXPECT_THROW(s.validate(), InvalidArgument);
}

TEST(Frontier, SnapshotStreamRoundTrip)
{
    auto rng = make_rng(5);
    const auto s = random_snapshot(rng, 17);
    std::stringstream io;
    write_snapshot(io, s);
    EXPECT_EQ(io.str().size(), 17 * kFullDumpEntryBytes);
    EXPECT_EQ(read_snapshot(io).entries, s.entries);

    std::stringstream cut(io.str().substr(0, 100));
    EXPECT_THROW(read_snapshot(cut), MalformedMessage);
}

TEST(FrontierSim, SmallRunRecoversEveryInterval)
{
    FrontierSimConfig cfg;
    cfg.accounts = 5000;
    cfg.mean_changes = 10;
    cfg.intervals = 10;
    const auto rows = frontier_sim(cfg);
    ASSERT_EQ(rows.size(), 10U);
    for (const auto& r : rows) {
        EXPECT_TRUE(r.recovered);
        EXPECT_EQ(r.full_bytes, 5000 * kFullDumpEntryBytes);
        EXPECT_LT(r.iblt_bytes, r.full_bytes);
    }
}

TEST(FrontierSim, DeterministicPerSeed)
{
    FrontierSimConfig cfg;
    cfg.accounts = 2000;
    cfg.intervals = 5;
    const auto a = frontier_sim(cfg);
    const auto b = frontier_sim(cfg);
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].changes, b[i].changes);
        EXPECT_EQ(a[i].iblt_bytes, b[i].iblt_bytes);
    }
}
