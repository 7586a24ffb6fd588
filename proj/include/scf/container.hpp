// Self-describing bitstream container: fixed header, little-endian fields,
// length-prefixed chunks, CRC-32 over the payload.
#ifndef SCF_CONTAINER_HPP
#define SCF_CONTAINER_HPP

#include <span>
#include <vector>

#include "scf/chroma_range.hpp"
#include "scf/types.hpp"

namespace scf {

enum class StreamKind : uint8_t { YCbCr420 = 0, Planar444 = 1 };

struct BitstreamHeader {
    uint8_t version = 1;
    StreamKind kind = StreamKind::YCbCr420;
    ChannelOrder order = ChannelOrder::YCbCr;  // payload colorspace for 4:4:4
    uint32_t width = 0;
    uint32_t height = 0;
    uint8_t bitdepth = 8;
    bool lmap = false;
    bool crc = false;
    bool boost = false;
    CrcParams crc_params;
    uint16_t y_max = 0;  // quantized-luma maximum for the CRC bitmaps
    std::vector<uint32_t> chunk_sizes;
    uint32_t checksum = 0;

    size_t serialized_size() const;
    void serialize(std::vector<uint8_t>& out) const;

    // Parses and validates the header; returns the payload offset.
    static BitstreamHeader parse(std::span<const uint8_t> bytes, size_t& payload_offset);
};

uint32_t crc32_of(std::span<const uint8_t> bytes);

}  // namespace scf

#endif
