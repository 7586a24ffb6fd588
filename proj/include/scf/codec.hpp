// Top-level codec entry points: the 4:2:0 path (Y pass, chroma range tables,
// joint CbCr pass with luma guidance) and the plain 4:4:4 path.
#ifndef SCF_CODEC_HPP
#define SCF_CODEC_HPP

#include <span>
#include <string>
#include <vector>

#include "scf/container.hpp"
#include "scf/types.hpp"

namespace scf {

struct EncoderConfig {
    bool lmap = true;
    bool crc = true;
    bool boost = true;
    CrcParams crc_params;
};

std::vector<uint8_t> encode420(const Image420& image, const EncoderConfig& config = {});
Image420 decode420(std::span<const uint8_t> bytes);

std::vector<uint8_t> encode444(const Image444& image);
Image444 decode444(std::span<const uint8_t> bytes);

// Header echo plus derived layout, for tooling.
struct StreamInfo {
    BitstreamHeader header;
    size_t header_bytes = 0;
    size_t payload_bytes = 0;
    // 4:2:0 chunk roles, in stream order: y, crc_cb, crc_cr (when present), cbcr.
    std::vector<std::string> chunk_roles;
};

StreamInfo inspect(std::span<const uint8_t> bytes);

inline double bits_per_pixel(size_t stream_bytes, uint32_t width, uint32_t height) {
    return double(stream_bytes) * 8.0 / (double(width) * double(height));
}

}  // namespace scf

#endif
