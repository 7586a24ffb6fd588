#include "scf/container.hpp"

#include <zlib.h>

#include <cstring>

namespace scf {

namespace {

constexpr char kMagic[4] = {'S', 'C', 'F', '0'};

void put_u16(std::vector<uint8_t>& out, uint16_t v) {
    out.push_back(uint8_t(v));
    out.push_back(uint8_t(v >> 8));
}

void put_u32(std::vector<uint8_t>& out, uint32_t v) {
    for (int i = 0; i < 4; ++i)
        out.push_back(uint8_t(v >> (8 * i)));
}

struct Reader {
    std::span<const uint8_t> bytes;
    size_t pos = 0;

    uint8_t u8() {
        if (pos + 1 > bytes.size())
            throw ContainerError("header truncated");
        return bytes[pos++];
    }
    uint16_t u16() { return uint16_t(u8()) | uint16_t(u8()) << 8; }
    uint32_t u32() {
        uint32_t v = 0;
        for (int i = 0; i < 4; ++i)
            v |= uint32_t(u8()) << (8 * i);
        return v;
    }
};

}  // namespace

uint32_t crc32_of(std::span<const uint8_t> bytes) {
    return uint32_t(::crc32(0L, bytes.data(), uInt(bytes.size())));
}

size_t BitstreamHeader::serialized_size() const {
    return 4 + 1 + 1 + 1 + 4 + 4 + 1 + 1 + 3 + 2 + 1 + 4 * chunk_sizes.size() + 4;
}

void BitstreamHeader::serialize(std::vector<uint8_t>& out) const {
    out.insert(out.end(), kMagic, kMagic + 4);
    out.push_back(version);
    out.push_back(uint8_t(kind));
    out.push_back(uint8_t(order));
    put_u32(out, width);
    put_u32(out, height);
    out.push_back(bitdepth);
    out.push_back(uint8_t(lmap) | uint8_t(crc) << 1 | uint8_t(boost) << 2);
    out.push_back(uint8_t(crc_params.blocks));
    out.push_back(uint8_t(crc_params.partitions));
    out.push_back(uint8_t(crc_params.luma_scale));
    put_u16(out, y_max);
    out.push_back(uint8_t(chunk_sizes.size()));
    for (uint32_t s : chunk_sizes)
        put_u32(out, s);
    put_u32(out, checksum);
}

BitstreamHeader BitstreamHeader::parse(std::span<const uint8_t> bytes,
                                       size_t& payload_offset) {
    Reader r{bytes};
    char magic[4];
    for (char& c : magic)
        c = char(r.u8());
    if (std::memcmp(magic, kMagic, 4) != 0)
        throw ContainerError("bad magic");

    BitstreamHeader h;
    h.version = r.u8();
    if (h.version != 1)
        throw ContainerError("unsupported version");
    const uint8_t kind = r.u8();
    if (kind > uint8_t(StreamKind::Planar444))
        throw ContainerError("unknown stream kind");
    h.kind = StreamKind(kind);
    const uint8_t order = r.u8();
    if (order > uint8_t(ChannelOrder::YCbCr))
        throw ContainerError("unknown channel order");
    h.order = ChannelOrder(order);
    h.width = r.u32();
    h.height = r.u32();
    h.bitdepth = r.u8();
    if (h.width == 0 || h.height == 0 || h.bitdepth != 8)
        throw ContainerError("unsupported geometry");
    // The checksum covers the payload only, so keep damaged headers from
    // requesting absurd allocations.
    if (h.width > (1u << 20) || h.height > (1u << 20) ||
        uint64_t(h.width) * h.height > (1u << 28))
        throw ContainerError("implausible geometry");
    const uint8_t flags = r.u8();
    h.lmap = flags & 1;
    h.crc = flags & 2;
    h.boost = flags & 4;
    h.crc_params.blocks = r.u8();
    h.crc_params.partitions = r.u8();
    h.crc_params.luma_scale = r.u8();
    h.y_max = r.u16();
    const uint8_t chunk_count = r.u8();
    h.chunk_sizes.resize(chunk_count);
    uint64_t payload = 0;
    for (uint32_t& s : h.chunk_sizes) {
        s = r.u32();
        payload += s;
    }
    h.checksum = r.u32();

    payload_offset = r.pos;
    if (bytes.size() - payload_offset != payload)
        throw ContainerError("payload size does not match chunk table");
    if (crc32_of(bytes.subspan(payload_offset)) != h.checksum)
        throw ContainerError("payload checksum mismatch");
    return h;
}

}  // namespace scf
