#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "blockrecon/graphene/types.hpp"
#include "blockrecon/graphene/wire.hpp"

namespace blockrecon::graphene {

enum class OrderingMode : std::uint8_t { Lex = 0, Csp = 1 };

struct GrapheneConfig {
    OrderingMode ordering = OrderingMode::Lex;
    std::uint32_t max_retries = 4;
    double iblt_multiplier = 1.5;
    std::uint8_t iblt_k = 3;
    /// Extra IBLT headroom in standard deviations of the expected difference (Poisson).
    double iblt_margin_sigmas = 2.0;
    /// Buckets per valueSum in CSP ordering mode.
    std::uint32_t csp_buckets = 4;
};

/// Sizing the sender derives from the request before touching the block contents.
struct EncodingPlan {
    std::uint64_t a = 1;
    double bloom_fpr = 1.0;
    std::uint64_t expected_missing = 0;
    std::uint32_t iblt_cells = 0;
};

EncodingPlan plan_encoding(std::uint64_t n, const GetGrapheneMsg& get, const GrapheneConfig& cfg = {});

/// Bloom filter at rate a / (m - n) and IBLT over the block's ShortIds plus the ordering
/// payload. A block whose ShortIds collide throws InvalidArgument.
GrapheneMsg sender_encode(const Block& block, const GetGrapheneMsg& get, std::uint64_t seed,
                          const GrapheneConfig& cfg = {});

struct ReceiveOutcome {
    std::vector<ShortId> accepted; // block members found in the mempool, sorted
    std::vector<ShortId> missing;  // block members to fetch, sorted
    /// ShortIds shared by several mempool entries that passed the filter. They are left out of
    /// the local IBLT, so any that belong to the block surface as missing.
    std::vector<ShortId> ambiguous;
    std::uint64_t candidates = 0;
    std::uint64_t false_positives = 0;
    double bloom_fpr = 0.0;
    bool decode_complete = false;
    bool retry_needed = true;
};

/// Throws MalformedMessage when the message fields disagree with the embedded structures.
ReceiveOutcome receiver_decode(const GrapheneMsg& msg, const Mempool& mempool);

/// Next request after a failed decode: the advertised mempool size doubles.
GetGrapheneMsg retry_exchange(const GetGrapheneMsg& prev);

/// Missing-rate estimate (ppm) from a failed decode: candidates beyond the expected false
/// positives are taken as present, the rest of the block as missing.
std::uint32_t estimate_missing_ppm(const ReceiveOutcome& failed, std::uint64_t n, std::uint64_t mempool_size);

/// Moving average of the share of block transactions a receiver had to fetch.
class MempoolSyncTracker {
public:
    explicit MempoolSyncTracker(double alpha = 0.5) : alpha_(alpha) {}

    void observe(std::uint64_t missing, std::uint64_t n);
    std::uint32_t hint_ppm() const;
    bool primed() const { return primed_; }

private:
    double alpha_;
    double rate_ = 0.0;
    bool primed_ = false;
};

enum class Direction : std::uint8_t { SenderToReceiver, ReceiverToSender };

std::string_view direction_name(Direction d);

struct TranscriptEntry {
    std::uint32_t block = 0;
    Direction direction = Direction::SenderToReceiver;
    MsgType type = MsgType::Inv;
    std::uint64_t bytes = 0;
};

class Transcript {
public:
    void record(std::uint32_t block, Direction dir, MsgType type, std::uint64_t bytes)
    {
        entries_.push_back({block, dir, type, bytes});
    }

    const std::vector<TranscriptEntry>& entries() const { return entries_; }
    std::uint64_t total_bytes() const;
    std::uint64_t bytes_of(MsgType type, std::optional<std::uint32_t> block = std::nullopt) const;
    std::uint64_t block_bytes(std::uint32_t block) const;

private:
    std::vector<TranscriptEntry> entries_;
};

struct RunResult {
    bool success = false;
    std::optional<Block> block;
    std::uint32_t retries = 0;
    std::uint64_t missing = 0;
    std::uint64_t missing_payload_bytes = 0;
    std::uint64_t total_bytes = 0;
    std::string failure;
};

/// inv -> getgraphene -> graphene (retried with doubled m on failure) -> getdata -> txs, then
/// reassembly in block order. Every message is serialized, logged to `transcript` under
/// `block_no` and parsed back on the other side. A successful result holds a block whose hash
/// equals the announced one.
RunResult protocol_run(const Block& block, const Mempool& mempool, Transcript& transcript, std::uint64_t seed,
                       const GrapheneConfig& cfg = {}, MempoolSyncTracker* tracker = nullptr,
                       std::uint32_t block_no = 0);

} // namespace blockrecon::graphene
