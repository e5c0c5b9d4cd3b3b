#include "blockrecon/graphene/wire.hpp"

namespace blockrecon::graphene {

namespace {

ByteReader open(ByteView bytes, MsgType want)
{
    if (peek_type(bytes) != want) throw MalformedMessage("unexpected message type");
    ByteReader r(bytes);
    r.u8();
    return r;
}

ShortId read_short_id(ByteReader& r)
{
    ShortId id;
    const auto raw = r.raw(kShortIdBytes);
    std::copy(raw.begin(), raw.end(), id.begin());
    return id;
}

Hash32 read_hash(ByteReader& r)
{
    Hash32 h;
    const auto raw = r.raw(h.size());
    std::copy(raw.begin(), raw.end(), h.begin());
    return h;
}

Bytes to_bytes(ByteView v) { return Bytes(v.begin(), v.end()); }

} // namespace

std::string_view msg_type_name(MsgType t)
{
    switch (t) {
    case MsgType::Inv: return "inv";
    case MsgType::GetGraphene: return "getgraphene";
    case MsgType::Graphene: return "graphene";
    case MsgType::GetData: return "getdata";
    case MsgType::Txs: return "txs";
    }
    return "unknown";
}

MsgType peek_type(ByteView bytes)
{
    if (bytes.empty()) throw MalformedMessage("empty message");
    if (bytes[0] < 1 || bytes[0] > 5) throw MalformedMessage("unknown message type tag");
    return static_cast<MsgType>(bytes[0]);
}

Bytes encode(const InvMsg& m)
{
    Bytes out;
    ByteWriter w(out);
    w.u8(static_cast<std::uint8_t>(MsgType::Inv));
    w.raw(m.block_hash);
    return out;
}

Bytes encode(const GetGrapheneMsg& m)
{
    Bytes out;
    ByteWriter w(out);
    w.u8(static_cast<std::uint8_t>(MsgType::GetGraphene));
    w.u64(m.mempool_size);
    w.u32(m.missing_ppm);
    return out;
}

Bytes encode(const GrapheneMsg& m)
{
    Bytes out;
    ByteWriter w(out);
    w.u8(static_cast<std::uint8_t>(MsgType::Graphene));
    w.blob(m.bloom);
    w.blob(m.iblt);
    w.u32(m.n_block_txs);
    w.u32(m.iblt_cell_count);
    w.blob(m.ordering_payload);
    w.blob(m.aux_header);
    return out;
}

Bytes encode(const GetDataMsg& m)
{
    Bytes out;
    ByteWriter w(out);
    w.u8(static_cast<std::uint8_t>(MsgType::GetData));
    w.u32(static_cast<std::uint32_t>(m.ids.size()));
    for (const auto& id : m.ids) w.raw(id);
    return out;
}

Bytes encode(const TxsMsg& m)
{
    Bytes out;
    ByteWriter w(out);
    w.u8(static_cast<std::uint8_t>(MsgType::Txs));
    w.u32(static_cast<std::uint32_t>(m.txs.size()));
    for (const auto& tx : m.txs) {
        w.raw(tx.hash);
        w.blob(tx.payload);
    }
    return out;
}

InvMsg decode_inv(ByteView bytes)
{
    auto r = open(bytes, MsgType::Inv);
    InvMsg m{read_hash(r)};
    r.expect_done();
    return m;
}

GetGrapheneMsg decode_get_graphene(ByteView bytes)
{
    auto r = open(bytes, MsgType::GetGraphene);
    GetGrapheneMsg m;
    m.mempool_size = r.u64();
    m.missing_ppm = r.u32();
    r.expect_done();
    return m;
}

GrapheneMsg decode_graphene(ByteView bytes)
{
    auto r = open(bytes, MsgType::Graphene);
    GrapheneMsg m;
    m.bloom = to_bytes(r.blob());
    m.iblt = to_bytes(r.blob());
    m.n_block_txs = r.u32();
    m.iblt_cell_count = r.u32();
    m.ordering_payload = to_bytes(r.blob());
    m.aux_header = to_bytes(r.blob());
    r.expect_done();
    return m;
}

GetDataMsg decode_get_data(ByteView bytes)
{
    auto r = open(bytes, MsgType::GetData);
    const std::uint32_t count = r.u32();
    if (r.remaining() != static_cast<std::size_t>(count) * kShortIdBytes)
        throw MalformedMessage("getdata length does not match its count");
    GetDataMsg m;
    m.ids.reserve(count);
    for (std::uint32_t i = 0; i < count; ++i) m.ids.push_back(read_short_id(r));
    return m;
}

TxsMsg decode_txs(ByteView bytes)
{
    auto r = open(bytes, MsgType::Txs);
    const std::uint32_t count = r.u32();
    TxsMsg m;
    for (std::uint32_t i = 0; i < count; ++i) {
        Transaction tx;
        tx.hash = read_hash(r);
        tx.payload = to_bytes(r.blob());
        m.txs.push_back(std::move(tx));
    }
    r.expect_done();
    return m;
}

} // namespace blockrecon::graphene
