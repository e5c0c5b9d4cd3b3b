#include "blockrecon/graphene/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "blockrecon/common/random.hpp"
#include "blockrecon/filters/bloom.hpp"
#include "blockrecon/graphene/cost.hpp"
#include "blockrecon/iblt/iblt.hpp"
#include "blockrecon/ordering/buckets.hpp"
#include "blockrecon/ordering/constraints.hpp"
#include "blockrecon/ordering/lex.hpp"

namespace blockrecon::graphene {

namespace {

constexpr std::uint64_t kBloomStream = 1;
constexpr std::uint64_t kIbltStream = 2;

std::vector<std::uint32_t> truth_for(const std::vector<ShortId>& sorted, const std::vector<ShortId>& canonical)
{
    std::unordered_map<std::uint64_t, std::uint32_t> pos;
    for (std::uint32_t i = 0; i < canonical.size(); ++i) pos[short_id_key(canonical[i])] = i + 1;
    std::vector<std::uint32_t> truth;
    truth.reserve(sorted.size());
    for (const auto& id : sorted) truth.push_back(pos.at(short_id_key(id)));
    return truth;
}

Bytes encode_csp_ordering(iblt::Iblt& t, const std::vector<ShortId>& canonical, const GrapheneConfig& cfg)
{
    const auto n = static_cast<std::uint32_t>(canonical.size());
    if (n > 0xffff) throw InvalidArgument("CSP ordering supports at most 65535 transactions");
    std::vector<ShortId> sorted = canonical;
    std::sort(sorted.begin(), sorted.end());
    const ordering::BucketEncoding enc{n, cfg.csp_buckets, t.params().value_width / cfg.csp_buckets};
    ordering::encode_block_indices(t, canonical, enc);

    const auto truth = truth_for(sorted, canonical);
    const auto cs = ordering::build_constraints(t, sorted, enc);
    const auto fb = ordering::square_system_fallback(cs, truth);
    std::vector<std::uint32_t> reveal = fb.revealed_vars;
    if (!fb.recovered) {
        reveal.resize(n);
        for (std::uint32_t v = 0; v < n; ++v) reveal[v] = v;
    }

    Bytes out;
    ByteWriter w(out);
    w.u8(static_cast<std::uint8_t>(OrderingMode::Csp));
    w.u8(static_cast<std::uint8_t>(enc.bucket_width));
    w.u16(static_cast<std::uint16_t>(reveal.size()));
    for (std::uint32_t v : reveal) {
        w.u16(static_cast<std::uint16_t>(v));
        w.u16(static_cast<std::uint16_t>(truth[v]));
    }
    return out;
}

// Block order of the ShortId set `ids` from the ordering payload.
std::vector<ShortId> decode_ordering(const GrapheneMsg& msg, std::vector<ShortId> ids)
{
    if (msg.ordering_payload.empty()) throw MalformedMessage("missing ordering payload");
    const auto mode = msg.ordering_payload[0];
    const ByteView body = ByteView(msg.ordering_payload).subspan(1);
    if (mode == static_cast<std::uint8_t>(OrderingMode::Lex)) return ordering::lex_order_decode(ids, body);
    if (mode != static_cast<std::uint8_t>(OrderingMode::Csp)) throw MalformedMessage("unknown ordering mode");

    ByteReader r(body);
    const std::uint8_t width = r.u8();
    const std::uint16_t count = r.u16();
    std::vector<std::pair<std::uint32_t, std::uint32_t>> revealed;
    for (std::uint16_t i = 0; i < count; ++i) {
        const std::uint32_t pos = r.u16();
        const std::uint32_t index = r.u16();
        revealed.emplace_back(pos, index);
    }
    r.expect_done();

    const auto t = iblt::Iblt::deserialize(msg.iblt);
    if (width == 0 || t.params().value_width < width) throw MalformedMessage("bucket width does not fit the IBLT values");
    std::sort(ids.begin(), ids.end());
    const auto n = static_cast<std::uint32_t>(ids.size());
    const auto enc = ordering::make_bucket_encoding(n, t.params().value_width, width);
    const auto cs = ordering::build_constraints(t, ids, enc);
    const auto assignment = ordering::recover_order(cs, revealed);
    std::vector<ShortId> out(n);
    for (std::uint32_t v = 0; v < n; ++v) out[assignment[v] - 1] = ids[v];
    return out;
}

class Channel {
public:
    Channel(Transcript& transcript, std::uint32_t block) : transcript_(transcript), block_(block) {}

    Bytes carry(Direction dir, Bytes bytes, std::uint64_t& total)
    {
        transcript_.record(block_, dir, peek_type(bytes), bytes.size());
        total += bytes.size();
        return bytes;
    }

private:
    Transcript& transcript_;
    std::uint32_t block_;
};

} // namespace

EncodingPlan plan_encoding(std::uint64_t n, const GetGrapheneMsg& get, const GrapheneConfig& cfg)
{
    EncodingPlan plan;
    const std::uint64_t m = get.mempool_size;
    std::uint32_t value_width = 0;
    if (cfg.ordering == OrderingMode::Csp) value_width = cfg.csp_buckets * ordering::index_bucket_width(n);
    const double tau = static_cast<double>(iblt::cell_bytes(kShortIdBytes, value_width));
    if (n >= 1 && m > n) {
        plan.a = choose_a(m, n, tau, cfg.iblt_multiplier);
        plan.bloom_fpr = static_cast<double>(plan.a) / static_cast<double>(m - n);
    } else {
        // Receiver claims a mempool no larger than the block: every entry may be a candidate.
        plan.a = 1;
        plan.bloom_fpr = 1.0;
    }
    plan.expected_missing =
        static_cast<std::uint64_t>(std::ceil(static_cast<double>(get.missing_ppm) * static_cast<double>(n) / 1e6));
    const double expected = static_cast<double>(plan.a + plan.expected_missing);
    const auto margin = static_cast<std::uint64_t>(std::ceil(cfg.iblt_margin_sigmas * std::sqrt(expected)));
    plan.iblt_cells = iblt::iblt_sizing(plan.a + plan.expected_missing + margin, cfg.iblt_k, cfg.iblt_multiplier);
    return plan;
}

GrapheneMsg sender_encode(const Block& block, const GetGrapheneMsg& get, std::uint64_t seed, const GrapheneConfig& cfg)
{
    block.validate();
    if (block.size() == 0) throw InvalidArgument("sender_encode: empty block");
    const std::vector<ShortId> ids = block.short_ids();
    {
        std::vector<ShortId> sorted = ids;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw InvalidArgument("sender_encode: ShortId collision inside the block");
    }
    const std::uint64_t n = block.size();
    const EncodingPlan plan = plan_encoding(n, get, cfg);

    auto bloom = filters::BloomFilter::for_target_fpr(n, plan.bloom_fpr, derive_seed(seed, kBloomStream));
    for (const auto& id : ids) bloom.insert(id);

    iblt::IbltParams p{plan.iblt_cells, cfg.iblt_k, static_cast<std::uint8_t>(kShortIdBytes), 0,
                       derive_seed(seed, kIbltStream)};
    GrapheneMsg msg;
    if (cfg.ordering == OrderingMode::Csp) {
        const ordering::BucketEncoding probe{static_cast<std::uint32_t>(n), cfg.csp_buckets, 1};
        const std::uint32_t width = ordering::bucket_width_for(n, ordering::max_bucket_addends(iblt::Iblt(p), ids, probe));
        p.value_width = static_cast<std::uint8_t>(width * cfg.csp_buckets);
        iblt::Iblt t(p);
        msg.ordering_payload = encode_csp_ordering(t, ids, cfg);
        msg.iblt = t.serialize();
    } else {
        iblt::Iblt t(p);
        for (const auto& id : ids) t.insert(id);
        msg.ordering_payload.push_back(static_cast<std::uint8_t>(OrderingMode::Lex));
        const Bytes lex = ordering::lex_order_encode(ids);
        msg.ordering_payload.insert(msg.ordering_payload.end(), lex.begin(), lex.end());
        msg.iblt = t.serialize();
    }
    msg.bloom = bloom.serialize();
    msg.n_block_txs = static_cast<std::uint32_t>(n);
    msg.iblt_cell_count = plan.iblt_cells;
    msg.aux_header = block.aux_header;
    return msg;
}

ReceiveOutcome receiver_decode(const GrapheneMsg& msg, const Mempool& mempool)
{
    const auto bloom = filters::BloomFilter::deserialize(msg.bloom);
    const auto sent = iblt::Iblt::deserialize(msg.iblt);
    if (sent.cell_count() != msg.iblt_cell_count) throw MalformedMessage("IBLT cell count disagrees with the message");
    if (sent.params().key_width != kShortIdBytes) throw MalformedMessage("IBLT keys are not ShortIds");

    ReceiveOutcome out;
    out.bloom_fpr = filters::bloom_fpr(bloom.bit_count(), msg.n_block_txs, bloom.hash_count());

    std::vector<ShortId> passing;
    for (const auto& tx : mempool.entries()) {
        const ShortId id = short_id_of(tx.hash);
        if (bloom.contains(id)) passing.push_back(id);
    }
    std::sort(passing.begin(), passing.end());
    std::vector<ShortId> candidates;
    for (std::size_t i = 0; i < passing.size();) {
        std::size_t j = i + 1;
        while (j < passing.size() && passing[j] == passing[i]) ++j;
        (j - i == 1 ? candidates : out.ambiguous).push_back(passing[i]);
        i = j;
    }
    out.candidates = candidates.size();

    iblt::IbltParams p = sent.params();
    p.value_width = 0;
    iblt::Iblt local(p);
    for (const auto& id : candidates) local.insert(id);
    const auto diff = local.subtract(sent.without_values()).decode();

    auto as_id = [](const iblt::KeyValue& kv) {
        ShortId id;
        std::copy(kv.key.begin(), kv.key.end(), id.begin());
        return id;
    };
    std::vector<ShortId> false_pos;
    for (const auto& kv : diff.only_in_a) false_pos.push_back(as_id(kv));
    for (const auto& kv : diff.only_in_b) out.missing.push_back(as_id(kv));
    std::sort(false_pos.begin(), false_pos.end());
    std::sort(out.missing.begin(), out.missing.end());

    bool consistent = diff.complete;
    for (const auto& id : false_pos)
        consistent = consistent && std::binary_search(candidates.begin(), candidates.end(), id);
    for (const auto& id : out.missing)
        consistent = consistent && !std::binary_search(candidates.begin(), candidates.end(), id);
    out.decode_complete = consistent;
    out.false_positives = false_pos.size();
    std::set_difference(candidates.begin(), candidates.end(), false_pos.begin(), false_pos.end(),
                        std::back_inserter(out.accepted));
    out.retry_needed = !consistent || out.accepted.size() + out.missing.size() != msg.n_block_txs;
    return out;
}

GetGrapheneMsg retry_exchange(const GetGrapheneMsg& prev)
{
    GetGrapheneMsg next = prev;
    next.mempool_size = prev.mempool_size * 2;
    return next;
}

std::uint32_t estimate_missing_ppm(const ReceiveOutcome& failed, std::uint64_t n, std::uint64_t mempool_size)
{
    if (n == 0) return 0;
    const double present = static_cast<double>(failed.candidates + failed.ambiguous.size()) -
                           failed.bloom_fpr * static_cast<double>(mempool_size);
    const double missing = std::clamp(static_cast<double>(n) - present, 0.0, static_cast<double>(n));
    return static_cast<std::uint32_t>(std::llround(missing / static_cast<double>(n) * 1e6));
}

void MempoolSyncTracker::observe(std::uint64_t missing, std::uint64_t n)
{
    if (n == 0) return;
    const double rate = static_cast<double>(missing) / static_cast<double>(n);
    rate_ = primed_ ? alpha_ * rate + (1.0 - alpha_) * rate_ : rate;
    primed_ = true;
}

std::uint32_t MempoolSyncTracker::hint_ppm() const { return static_cast<std::uint32_t>(std::llround(rate_ * 1e6)); }

std::string_view direction_name(Direction d)
{
    return d == Direction::SenderToReceiver ? "sender_to_receiver" : "receiver_to_sender";
}

std::uint64_t Transcript::total_bytes() const
{
    std::uint64_t total = 0;
    for (const auto& e : entries_) total += e.bytes;
    return total;
}

std::uint64_t Transcript::bytes_of(MsgType type, std::optional<std::uint32_t> block) const
{
    std::uint64_t total = 0;
    for (const auto& e : entries_)
        if (e.type == type && (!block || e.block == *block)) total += e.bytes;
    return total;
}

std::uint64_t Transcript::block_bytes(std::uint32_t block) const
{
    std::uint64_t total = 0;
    for (const auto& e : entries_)
        if (e.block == block) total += e.bytes;
    return total;
}

RunResult protocol_run(const Block& block, const Mempool& mempool, Transcript& transcript, std::uint64_t seed,
                       const GrapheneConfig& cfg, MempoolSyncTracker* tracker, std::uint32_t block_no)
{
    RunResult res;
    Channel ch(transcript, block_no);
    const auto to_receiver = Direction::SenderToReceiver;
    const auto to_sender = Direction::ReceiverToSender;

    // Sender announces; receiver asks for a graphene encoding.
    const InvMsg inv = decode_inv(ch.carry(to_receiver, encode(InvMsg{block_hash(block)}), res.total_bytes));
    GetGrapheneMsg get{mempool.size(), tracker ? tracker->hint_ppm() : 0};

    GrapheneMsg msg;
    ReceiveOutcome outcome;
    for (std::uint32_t attempt = 0;; ++attempt) {
        const auto req = decode_get_graphene(ch.carry(to_sender, encode(get), res.total_bytes));
        msg = decode_graphene(
            ch.carry(to_receiver, encode(sender_encode(block, req, derive_seed(seed, attempt), cfg)), res.total_bytes));
        outcome = receiver_decode(msg, mempool);
        if (!outcome.retry_needed) break;
        if (attempt == cfg.max_retries) {
            res.failure = "block not recovered after " + std::to_string(cfg.max_retries) + " retries";
            res.retries = attempt;
            return res;
        }
        const std::uint32_t estimate = estimate_missing_ppm(outcome, msg.n_block_txs, mempool.size());
        get = retry_exchange(get);
        get.missing_ppm = std::max(get.missing_ppm, estimate);
        res.retries = attempt + 1;
    }

    std::unordered_map<std::uint64_t, Transaction> have;
    for (const auto& id : outcome.accepted) {
        const auto found = mempool.by_short_id(id);
        have.emplace(short_id_key(id), *found.front());
    }
    res.missing = outcome.missing.size();
    if (!outcome.missing.empty()) {
        const auto request = decode_get_data(ch.carry(to_sender, encode(GetDataMsg{outcome.missing}), res.total_bytes));
        // Sender answers from the block.
        std::unordered_map<std::uint64_t, std::size_t> in_block;
        for (std::size_t i = 0; i < block.size(); ++i) in_block[short_id_key(short_id_of(block.tx_hashes[i]))] = i;
        TxsMsg reply;
        for (const auto& id : request.ids) {
            auto it = in_block.find(short_id_key(id));
            if (it != in_block.end()) reply.txs.push_back({block.tx_hashes[it->second], block.tx_payloads[it->second]});
        }
        const auto got = decode_txs(ch.carry(to_receiver, encode(reply), res.total_bytes));
        for (const auto& tx : got.txs) {
            const auto id = short_id_of(tx.hash);
            if (!std::binary_search(outcome.missing.begin(), outcome.missing.end(), id)) continue;
            res.missing_payload_bytes += tx.payload.size();
            have.emplace(short_id_key(id), tx);
        }
    }
    if (tracker) tracker->observe(outcome.missing.size(), msg.n_block_txs);

    try {
        std::vector<ShortId> ids;
        ids.reserve(have.size());
        for (const auto& [key, tx] : have) ids.push_back(short_id_of(tx.hash));
        if (ids.size() != msg.n_block_txs) {
            res.failure = "transaction set incomplete after fetch";
            return res;
        }
        const auto order = decode_ordering(msg, ids);
        Block rebuilt;
        rebuilt.aux_header = msg.aux_header;
        for (const auto& id : order) {
            const auto& tx = have.at(short_id_key(id));
            rebuilt.tx_hashes.push_back(tx.hash);
            rebuilt.tx_payloads.push_back(tx.payload);
        }
        if (block_hash(rebuilt) != inv.block_hash) {
            res.failure = "reassembled block does not match the announced hash";
            return res;
        }
        res.block = std::move(rebuilt);
        res.success = true;
    } catch (const Error& e) {
        res.failure = std::string("reassembly failed: ") + e.what();
    }
    return res;
}

} // namespace blockrecon::graphene
