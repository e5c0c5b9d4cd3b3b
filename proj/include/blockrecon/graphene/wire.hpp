#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "blockrecon/common/bytes.hpp"
#include "blockrecon/common/short_id.hpp"
#include "blockrecon/graphene/types.hpp"

namespace blockrecon::graphene {

enum class MsgType : std::uint8_t { Inv = 1, GetGraphene = 2, Graphene = 3, GetData = 4, Txs = 5 };

std::string_view msg_type_name(MsgType t);

struct InvMsg {
    Hash32 block_hash{};
    bool operator==(const InvMsg&) const = default;
};

struct GetGrapheneMsg {
    std::uint64_t mempool_size = 0;
    /// Receiver's estimate of the fraction of block transactions missing from its mempool, in
    /// parts per million. Zero when it has no history.
    std::uint32_t missing_ppm = 0;
    bool operator==(const GetGrapheneMsg&) const = default;
};

struct GrapheneMsg {
    Bytes bloom;
    Bytes iblt;
    std::uint32_t n_block_txs = 0;
    std::uint32_t iblt_cell_count = 0;
    Bytes ordering_payload;
    Bytes aux_header;
    bool operator==(const GrapheneMsg&) const = default;
};

struct GetDataMsg {
    std::vector<ShortId> ids;
    bool operator==(const GetDataMsg&) const = default;
};

struct TxsMsg {
    std::vector<Transaction> txs;
    bool operator==(const TxsMsg&) const = default;
};

// Every message starts with its one-byte type tag; integers are little-endian and byte strings
// carry a u32 length prefix.
Bytes encode(const InvMsg& m);
Bytes encode(const GetGrapheneMsg& m);
Bytes encode(const GrapheneMsg& m);
Bytes encode(const GetDataMsg& m);
Bytes encode(const TxsMsg& m);

/// Tag of an encoded message; throws MalformedMessage for empty input or an unknown tag.
MsgType peek_type(ByteView bytes);

InvMsg decode_inv(ByteView bytes);
GetGrapheneMsg decode_get_graphene(ByteView bytes);
GrapheneMsg decode_graphene(ByteView bytes);
GetDataMsg decode_get_data(ByteView bytes);
TxsMsg decode_txs(ByteView bytes);

} // namespace blockrecon::graphene
