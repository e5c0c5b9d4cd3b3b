#include <gtest/gtest.h>

#include <cmath>

#include "blockrecon/filters/bloom.hpp"
#include "blockrecon/simnet/simnet.hpp"

using namespace blockrecon;
using namespace blockrecon::simnet;

TEST(Scenario, OverlapAndSizes)
{
    const auto s = gen_scenario(ScenarioConfig{100, 1000, 0.9, 50.0, 1, 4});
    EXPECT_EQ(s.block.size(), 100U);
    EXPECT_EQ(s.mempool.size(), 1000U);
    EXPECT_EQ(s.shared, 90U);
    std::uint32_t held = 0;
    for (const auto& h : s.block.tx_hashes) held += s.mempool.contains(h) ? 1 : 0;
    EXPECT_EQ(held, 90U);
    for (const auto& p : s.block.tx_payloads) {
        EXPECT_GE(p.size(), 25U);
        EXPECT_LE(p.size(), 75U);
    }
    EXPECT_THROW(gen_scenario(ScenarioConfig{100, 50, 1.0, 10.0, 1, 1}), InvalidArgument);
    EXPECT_THROW(gen_scenario(ScenarioConfig{10, 50, 1.5, 10.0, 1, 1}), InvalidArgument);
}

TEST(Scenario, StreamsDiffer)
{
    const ScenarioConfig cfg{20, 100, 1.0, 10.0, 1, 4};
    EXPECT_EQ(gen_scenario(cfg, 1).block, gen_scenario(cfg, 1).block);
    EXPECT_NE(gen_scenario(cfg, 1).block, gen_scenario(cfg, 2).block);
}

TEST(Baselines, Arithmetic)
{
    EXPECT_EQ(baseline_compact_bytes(400), 88U + 6 * 400);
    EXPECT_EQ(baseline_compact_fetch_bytes(0, 0), 0U);
    EXPECT_EQ(baseline_compact_fetch_bytes(3, 900), 32U + 6 + 32 + 900);
    // Xthin Bloom at 0.001: m = ceil(-n ln p / ln^2 2) bits.
    const double bits = std::ceil(-60000.0 * std::log(0.001) / (std::log(2.0) * std::log(2.0)));
    const auto expect = filters::BloomFilter::kHeaderBytes + (static_cast<std::uint64_t>(bits) + 7) / 8 + 6 * 400;
    EXPECT_NEAR(static_cast<double>(baseline_xthin_bytes(400, 60000, 0)), static_cast<double>(expect), 2.0);
    EXPECT_EQ(tx_wire_bytes(300), 336U);
}

TEST(Grid, Parse)
{
    const auto g = parse_grid("0.70:1.00:0.02");
    ASSERT_EQ(g.size(), 16U);
    EXPECT_DOUBLE_EQ(g.front(), 0.7);
    EXPECT_DOUBLE_EQ(g.back(), 1.0);
    EXPECT_EQ(parse_grid("0.5").size(), 1U);
    EXPECT_THROW(parse_grid("1:0:0.1"), InvalidArgument);
    EXPECT_THROW(parse_grid("a:b:c"), InvalidArgument);
    EXPECT_THROW(parse_grid("0:1:0"), InvalidArgument);
}

TEST(Crossover, HighestOverlapWhereGrapheneLoses)
{
    std::vector<SweepRow> rows{{0.8, 900, 500}, {1.0, 200, 500}, {0.9, 600, 500}, {0.95, 400, 500}};
    EXPECT_DOUBLE_EQ(*find_crossover(rows), 0.9);
    rows.pop_back();
    rows.erase(rows.begin());
    rows.erase(rows.begin() + 1);
    EXPECT_FALSE(find_crossover(rows).has_value());
}

TEST(Sweep, SmallGridShape)
{
    SweepConfig cfg;
    cfg.n = 100;
    cfg.mempool_size = 2000;
    cfg.overlaps = {0.9, 1.0};
    cfg.trials = 3;
    cfg.payload_mean = 100;
    const auto a = run_sweep(cfg);
    ASSERT_EQ(a.rows.size(), 2U);
    EXPECT_DOUBLE_EQ(a.rows[0].missing_tx_count, 10.0);
    EXPECT_DOUBLE_EQ(a.rows[1].missing_tx_count, 0.0);
    EXPECT_DOUBLE_EQ(a.rows[1].compact_bytes, 88.0 + 600);
    EXPECT_LT(a.rows[1].graphene_bytes, a.rows[1].compact_bytes);
    const auto b = run_sweep(cfg);
    EXPECT_DOUBLE_EQ(a.rows[0].graphene_bytes, b.rows[0].graphene_bytes);
}
