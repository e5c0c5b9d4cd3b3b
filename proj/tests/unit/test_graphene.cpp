#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "blockrecon/common/random.hpp"
#include "blockrecon/graphene/cost.hpp"
#include "blockrecon/graphene/protocol.hpp"
#include "blockrecon/graphene/types.hpp"
#include "blockrecon/graphene/wire.hpp"
#include "blockrecon/simnet/simnet.hpp"

using namespace blockrecon;
using namespace blockrecon::graphene;

namespace {

Hash32 tx_hash(std::uint64_t i)
{
    Bytes b(8);
    for (int k = 0; k < 8; ++k) b[k] = static_cast<std::uint8_t>(i >> (8 * k));
    return hash256(b);
}

// Plain evaluation of T(a) written out here, independent of the library.
double oracle_T(double m, double n, double a, double tau, double d)
{
    const double ln2sq = std::log(2.0) * std::log(2.0);
    return n * std::log((m - n) / a) / (8.0 * ln2sq) + a * d * tau;
}

} // namespace

TEST(Cost, TermsMatchOracle)
{
    const CostParams p{60000, 400, 12.0, 13.0, 1.5};
    EXPECT_NEAR(cost_T(p), oracle_T(60000, 400, 12, 13, 1.5), 1e-9);
    EXPECT_NEAR(cost_iblt_term(p), 12 * 1.5 * 13, 1e-12);
    EXPECT_THROW(cost_T(CostParams{400, 400, 1, 13, 1.5}), InvalidArgument);
    EXPECT_THROW(cost_T(CostParams{1000, 10, 0.0, 13, 1.5}), InvalidArgument);
}

TEST(Cost, ChooseAMatchesBruteForceScan)
{
    for (auto [m, n, tau] : {std::tuple{60000ULL, 400ULL, 13.0}, {60000ULL, 2000ULL, 17.0}, {5000ULL, 100ULL, 13.0},
                             {1000ULL, 999ULL, 13.0}, {200000ULL, 4000ULL, 21.0}}) {
        std::uint64_t best = 1;
        for (std::uint64_t a = 1; a <= std::min<std::uint64_t>(m - n, 5000); ++a)
            if (oracle_T(m, n, a, tau, 1.5) < oracle_T(m, n, best, tau, 1.5)) best = a;
        const auto got = choose_a(m, n, tau, 1.5);
        EXPECT_LE(std::llabs(static_cast<long long>(got) - static_cast<long long>(best)), 1) << m << " " << n;
    }
    EXPECT_THROW(choose_a(10, 10, 13, 1.5), InvalidArgument);
}

TEST(Types, BlockSerializationAndShortIds)
{
    Block b;
    for (std::uint64_t i = 0; i < 3; ++i) {
        b.tx_hashes.push_back(tx_hash(i));
        b.tx_payloads.push_back(Bytes(10 + i, 0x5a));
    }
    const auto ids = b.short_ids();
    ASSERT_EQ(ids.size(), 3U);
    EXPECT_EQ(ids[1], short_id_of(tx_hash(1)));
    EXPECT_EQ(serialize_full_block(b).size(), full_block_size(b));
    b.tx_payloads.pop_back();
    EXPECT_THROW(b.validate(), InvalidArgument);
}

TEST(Types, MempoolDeduplicates)
{
    Mempool mp;
    EXPECT_TRUE(mp.add(tx_hash(1)));
    EXPECT_FALSE(mp.add(tx_hash(1)));
    EXPECT_TRUE(mp.contains(tx_hash(1)));
    EXPECT_FALSE(mp.contains(tx_hash(2)));
    EXPECT_EQ(mp.by_short_id(short_id_of(tx_hash(1))).size(), 1U);
}

TEST(Wire, RoundTrips)
{
    const InvMsg inv{tx_hash(9)};
    EXPECT_EQ(decode_inv(encode(inv)), inv);
    const GetGrapheneMsg get{60000, 1234};
    EXPECT_EQ(decode_get_graphene(encode(get)), get);
    const GrapheneMsg g{Bytes{1, 2}, Bytes{3}, 400, 27, Bytes{0, 5}, Bytes(80, 1)};
    EXPECT_EQ(decode_graphene(encode(g)), g);
    const GetDataMsg gd{{short_id_of(tx_hash(1)), short_id_of(tx_hash(2))}};
    EXPECT_EQ(decode_get_data(encode(gd)), gd);
    const TxsMsg txs{{Transaction{tx_hash(3), Bytes{4, 5, 6}}}};
    EXPECT_EQ(decode_txs(encode(txs)), txs);
    EXPECT_EQ(peek_type(encode(get)), MsgType::GetGraphene);
}

TEST(Wire, RejectsMalformed)
{
    EXPECT_THROW(peek_type(Bytes{}), MalformedMessage);
    EXPECT_THROW(peek_type(Bytes{9}), MalformedMessage);
    auto b = encode(GetGrapheneMsg{1, 2});
    EXPECT_THROW(decode_inv(b), MalformedMessage);
    b.push_back(0);
    EXPECT_THROW(decode_get_graphene(b), MalformedMessage);
    auto d = encode(GetDataMsg{{short_id_of(tx_hash(1))}});
    d.pop_back();
    EXPECT_THROW(decode_get_data(d), MalformedMessage);
}

TEST(Protocol, PlanSizesIbltFromHint)
{
    const auto p0 = plan_encoding(400, GetGrapheneMsg{60000, 0});
    const auto p1 = plan_encoding(400, GetGrapheneMsg{60000, 50000});
    EXPECT_EQ(p0.expected_missing, 0U);
    EXPECT_EQ(p1.expected_missing, 20U);
    EXPECT_GT(p1.iblt_cells, p0.iblt_cells);
    EXPECT_NEAR(p0.bloom_fpr, static_cast<double>(p0.a) / (60000 - 400), 1e-15);
}

TEST(Protocol, RetryDoublesMempoolClaim)
{
    const auto r = retry_exchange(GetGrapheneMsg{1000, 5});
    EXPECT_EQ(r.mempool_size, 2000U);
}

class ProtocolRun : public ::testing::TestWithParam<std::tuple<double, OrderingMode>> {};

TEST_P(ProtocolRun, RecoversBlockInOrder)
{
    const auto [overlap, mode] = GetParam();
    GrapheneConfig cfg;
    cfg.ordering = mode;
    int ok = 0;
    for (std::uint64_t t = 0; t < 5; ++t) {
        const auto s = simnet::gen_scenario(simnet::ScenarioConfig{200, 5000, overlap, 100.0, 1, 31}, t);
        Transcript tr;
        const auto r = protocol_run(s.block, s.mempool, tr, t, cfg);
        if (!r.success) continue;
        ++ok;
        ASSERT_TRUE(r.block.has_value());
        EXPECT_EQ(*r.block, s.block);
        EXPECT_EQ(r.missing, 200U - s.shared);
        EXPECT_EQ(tr.total_bytes(), r.total_bytes);
        EXPECT_EQ(tr.bytes_of(MsgType::Inv), encode(InvMsg{}).size());
        if (r.missing == 0) {
            EXPECT_EQ(tr.bytes_of(MsgType::GetData), 0U);
        }
    }
    EXPECT_GE(ok, 4);
}

INSTANTIATE_TEST_SUITE_P(Overlaps, ProtocolRun,
                         ::testing::Combine(::testing::Values(1.0, 0.95, 0.8), ::testing::Values(OrderingMode::Lex, OrderingMode::Csp)));

TEST(Protocol, GrapheneMsgMuchSmallerThanBlock)
{
    const auto s = simnet::gen_scenario(simnet::ScenarioConfig{400, 60000, 1.0, 300.0, 1, 3}, 0);
    Transcript tr;
    const auto r = protocol_run(s.block, s.mempool, tr, 1);
    ASSERT_TRUE(r.success);
    EXPECT_LT(tr.bytes_of(MsgType::Graphene), full_block_size(s.block) / 5);
}

TEST(Protocol, TrackerLearnsMissingRate)
{
    MempoolSyncTracker t;
    EXPECT_FALSE(t.primed());
    EXPECT_EQ(t.hint_ppm(), 0U);
    t.observe(40, 400);
    EXPECT_TRUE(t.primed());
    EXPECT_EQ(t.hint_ppm(), 100000U);
    t.observe(0, 400);
    EXPECT_EQ(t.hint_ppm(), 50000U);
}

TEST(Protocol, TranscriptDirections)
{
    EXPECT_EQ(direction_name(Direction::SenderToReceiver), "sender_to_receiver");
    EXPECT_EQ(direction_name(Direction::ReceiverToSender), "receiver_to_sender");
    EXPECT_EQ(msg_type_name(MsgType::GetData), "getdata");
}

TEST(Cost, WorkedExample)
{
    const CostParams p{60000, 400, 20.0, 13.0, 1.5};
    EXPECT_NEAR(cost_T(p), 1223.0, 1.0);
    EXPECT_NEAR(cost_T(CostParams{60000, 400, 59600.0, 13.0, 1.5}), 59600 * 1.5 * 13, 1e-6);
}

TEST(Cost, ChooseAEdgesAndMonotoneInTau)
{
    EXPECT_EQ(choose_a(401, 400, 13, 1.5), 1U);
    std::uint64_t prev = choose_a(60000, 400, 1.0, 1.5);
    for (double tau = 2.0; tau <= 256.0; tau *= 2) {
        const auto a = choose_a(60000, 400, tau, 1.5);
        EXPECT_LE(a, prev);
        prev = a;
    }
}

TEST(Protocol, TwoRetriesQuadruple)
{
    EXPECT_EQ(retry_exchange(retry_exchange(GetGrapheneMsg{60000, 0})).mempool_size, 240000U);
}

TEST(Protocol, BloomRateMetEmpirically)
{
    double fps = 0, expected = 0;
    for (std::uint64_t t = 0; t < 50; ++t) {
        const auto s = simnet::gen_scenario(simnet::ScenarioConfig{400, 60000, 1.0, 10.0, 1, 41}, t);
        const auto msg = sender_encode(s.block, GetGrapheneMsg{60000, 0}, t);
        const auto out = receiver_decode(msg, s.mempool);
        fps += static_cast<double>(out.candidates - 400);
        expected += out.bloom_fpr * (60000 - 400);
        if (!out.retry_needed) {
            auto ids = s.block.short_ids();
            std::sort(ids.begin(), ids.end());
            EXPECT_EQ(out.accepted, ids);
        }
    }
    EXPECT_NEAR(fps / expected, 1.0, 0.2) << fps << " false positives, " << expected << " expected";
}

TEST(Protocol, ReportsExactlyTheMissingTransactions)
{
    const auto s = simnet::gen_scenario(simnet::ScenarioConfig{100, 3000, 0.95, 10.0, 1, 5}, 0);
    const auto msg = sender_encode(s.block, GetGrapheneMsg{3000, 60000}, 9);
    const auto out = receiver_decode(msg, s.mempool);
    ASSERT_FALSE(out.retry_needed);
    std::vector<ShortId> want;
    for (const auto& h : s.block.tx_hashes)
        if (!s.mempool.contains(h)) want.push_back(short_id_of(h));
    std::sort(want.begin(), want.end());
    EXPECT_EQ(want.size(), 5U);
    EXPECT_EQ(out.missing, want);
}

TEST(Protocol, DisjointMempoolNeverSilentlyWrong)
{
    for (std::uint64_t t = 0; t < 5; ++t) {
        const auto s = simnet::gen_scenario(simnet::ScenarioConfig{50, 2000, 0.0, 10.0, 1, 6}, t);
        const auto out = receiver_decode(sender_encode(s.block, GetGrapheneMsg{2000, 0}, t), s.mempool);
        EXPECT_TRUE(out.retry_needed || out.missing.size() == 50);
        Transcript tr;
        const auto r = protocol_run(s.block, s.mempool, tr, t);
        if (r.success) EXPECT_EQ(*r.block, s.block);
        else EXPECT_FALSE(r.failure.empty());
    }
}

TEST(Protocol, EightyPercentOverlapConverges)
{
    int ok = 0;
    for (std::uint64_t t = 0; t < 20; ++t) {
        const auto s = simnet::gen_scenario(simnet::ScenarioConfig{200, 6000, 0.8, 10.0, 1, 7}, t);
        Transcript tr;
        const auto r = protocol_run(s.block, s.mempool, tr, t);
        if (r.success && r.retries <= 3) ++ok;
    }
    EXPECT_GE(ok, 19);
}

TEST(Protocol, ShortIdCollisionIsAmbiguousNotGuessed)
{
    auto s = simnet::gen_scenario(simnet::ScenarioConfig{50, 500, 1.0, 10.0, 1, 8}, 0);
    Hash32 twin = s.block.tx_hashes[3];
    twin[31] ^= 0xff; // same first five bytes, different transaction
    s.mempool.add(twin, Bytes{1});
    const auto out = receiver_decode(sender_encode(s.block, GetGrapheneMsg{501, 0}, 1), s.mempool);
    EXPECT_EQ(out.ambiguous, std::vector<ShortId>{short_id_of(twin)});
    Transcript tr;
    const auto r = protocol_run(s.block, s.mempool, tr, 1);
    ASSERT_TRUE(r.success);
    EXPECT_EQ(*r.block, s.block);
}

TEST(Protocol, FetchBytesGrowWithMissing)
{
    std::vector<double> per_overlap;
    for (double overlap : {1.0, 0.95, 0.9}) {
        const auto s = simnet::gen_scenario(simnet::ScenarioConfig{200, 5000, overlap, 100.0, 1, 12}, 0);
        Transcript tr;
        const auto r = protocol_run(s.block, s.mempool, tr, 2);
        ASSERT_TRUE(r.success);
        per_overlap.push_back(static_cast<double>(tr.bytes_of(MsgType::GetData) + tr.bytes_of(MsgType::Txs)));
    }
    EXPECT_EQ(per_overlap[0], 0.0);
    EXPECT_LT(per_overlap[1], per_overlap[2]);
}
