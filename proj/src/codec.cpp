#include "scf/codec.hpp"

#include "scf/pipeline.hpp"

namespace scf {

namespace {

std::vector<uint8_t> assemble(BitstreamHeader header,
                              const std::vector<std::vector<uint8_t>>& chunks) {
    std::vector<uint8_t> payload;
    header.chunk_sizes.clear();
    for (const auto& c : chunks) {
        header.chunk_sizes.push_back(uint32_t(c.size()));
        payload.insert(payload.end(), c.begin(), c.end());
    }
    header.checksum = crc32_of(payload);

    std::vector<uint8_t> out;
    out.reserve(header.serialized_size() + payload.size());
    header.serialize(out);
    out.insert(out.end(), payload.begin(), payload.end());
    return out;
}

std::vector<std::span<const uint8_t>> split_chunks(std::span<const uint8_t> bytes,
                                                   const BitstreamHeader& header,
                                                   size_t payload_offset) {
    std::vector<std::span<const uint8_t>> chunks;
    size_t pos = payload_offset;
    for (uint32_t size : header.chunk_sizes) {
        chunks.push_back(bytes.subspan(pos, size));
        pos += size;
    }
    return chunks;
}

}  // namespace

std::vector<uint8_t> encode420(const Image420& image, const EncoderConfig& config) {
    validate(image);
    config.crc_params.validate();
    if (image.y.bitdepth != 8)
        throw UsageError("only 8-bit images supported");

    BitstreamHeader header;
    header.kind = StreamKind::YCbCr420;
    header.order = ChannelOrder::YCbCr;
    header.width = uint32_t(image.y.width);
    header.height = uint32_t(image.y.height);
    header.lmap = config.lmap;
    header.crc = config.crc;
    header.boost = config.boost;
    header.crc_params = config.crc_params;
    header.y_max =
        uint16_t(quantized_luma_max(image.y.bitdepth, config.crc_params.luma_scale));

    std::vector<std::vector<uint8_t>> chunks;

    // Y pass: arity 1, plain state.
    {
        PipelineConfig cfg;
        cfg.arity = 1;
        RangeEncoder enc;
        encode_plane_set({&image.y}, cfg, enc);
        chunks.push_back(enc.finish());
    }

    // Side information next so the decoder has the tables before chroma data.
    ChromaRangeTable table{config.crc_params, image.cb.width, image.cb.height,
                           int(header.y_max)};
    if (config.crc) {
        table = ChromaRangeTable::build(image, config.crc_params);
        auto crc_chunks = table.encode_chunks();
        chunks.push_back(std::move(crc_chunks[0]));
        chunks.push_back(std::move(crc_chunks[1]));
    }

    // Joint CbCr pass. Both quantized luma maps derive from the Y plane, which
    // is identical on the decoder side after its lossless pass.
    {
        const Plane luma_q2 = config.lmap ? quantize_luma(image.y, 2) : Plane{};
        const Plane luma_qcrc =
            config.crc ? quantize_luma(image.y, config.crc_params.luma_scale) : Plane{};
        PipelineConfig cfg;
        cfg.arity = 2;
        cfg.lmap = config.lmap;
        cfg.boost = config.boost;
        cfg.crc = config.crc ? &table : nullptr;
        cfg.luma_q2 = config.lmap ? &luma_q2 : nullptr;
        cfg.luma_qcrc = config.crc ? &luma_qcrc : nullptr;
        RangeEncoder enc;
        encode_plane_set({&image.cb, &image.cr}, cfg, enc);
        chunks.push_back(enc.finish());
    }

    return assemble(header, chunks);
}

Image420 decode420(std::span<const uint8_t> bytes) {
    size_t payload_offset = 0;
    const BitstreamHeader header = BitstreamHeader::parse(bytes, payload_offset);
    if (header.kind != StreamKind::YCbCr420)
        throw ContainerError("not a 4:2:0 stream");
    if (header.width % 2 != 0 || header.height % 2 != 0)
        throw ContainerError("4:2:0 stream with odd dimensions");
    const size_t expected_chunks = header.crc ? 4 : 2;
    if (header.chunk_sizes.size() != expected_chunks)
        throw ContainerError("unexpected chunk count");

    const auto chunks = split_chunks(bytes, header, payload_offset);
    const int cw = int(header.width) / 2, ch = int(header.height) / 2;

    Image420 image;
    {
        PipelineConfig cfg;
        cfg.arity = 1;
        RangeDecoder dec(chunks[0]);
        image.y = std::move(
            decode_plane_set(cfg, dec, int(header.width), int(header.height))[0]);
    }

    ChromaRangeTable table{header.crc_params, cw, ch, int(header.y_max)};
    if (header.crc)
        table = ChromaRangeTable::decode_chunks(header.crc_params, cw, ch,
                                                int(header.y_max), chunks[1], chunks[2]);

    {
        const Plane luma_q2 = header.lmap ? quantize_luma(image.y, 2) : Plane{};
        const Plane luma_qcrc =
            header.crc ? quantize_luma(image.y, header.crc_params.luma_scale) : Plane{};
        PipelineConfig cfg;
        cfg.arity = 2;
        cfg.lmap = header.lmap;
        cfg.boost = header.boost;
        cfg.crc = header.crc ? &table : nullptr;
        cfg.luma_q2 = header.lmap ? &luma_q2 : nullptr;
        cfg.luma_qcrc = header.crc ? &luma_qcrc : nullptr;
        RangeDecoder dec(chunks.back());
        auto planes = decode_plane_set(cfg, dec, cw, ch);
        image.cb = std::move(planes[0]);
        image.cr = std::move(planes[1]);
    }
    return image;
}

std::vector<uint8_t> encode444(const Image444& image) {
    validate(image);
    if (image.planes[0].bitdepth != 8)
        throw UsageError("only 8-bit images supported");

    BitstreamHeader header;
    header.kind = StreamKind::Planar444;
    header.order = image.order;
    header.width = uint32_t(image.planes[0].width);
    header.height = uint32_t(image.planes[0].height);

    PipelineConfig cfg;
    cfg.arity = 3;
    RangeEncoder enc;
    encode_plane_set({&image.planes[0], &image.planes[1], &image.planes[2]}, cfg, enc);
    return assemble(header, {enc.finish()});
}

Image444 decode444(std::span<const uint8_t> bytes) {
    size_t payload_offset = 0;
    const BitstreamHeader header = BitstreamHeader::parse(bytes, payload_offset);
    if (header.kind != StreamKind::Planar444)
        throw ContainerError("not a 4:4:4 stream");
    if (header.chunk_sizes.size() != 1)
        throw ContainerError("unexpected chunk count");

    const auto chunks = split_chunks(bytes, header, payload_offset);
    PipelineConfig cfg;
    cfg.arity = 3;
    RangeDecoder dec(chunks[0]);
    auto planes = decode_plane_set(cfg, dec, int(header.width), int(header.height));

    Image444 image;
    image.order = header.order;
    for (int c = 0; c < 3; ++c)
        image.planes[size_t(c)] = std::move(planes[size_t(c)]);
    return image;
}

StreamInfo inspect(std::span<const uint8_t> bytes) {
    StreamInfo info;
    size_t payload_offset = 0;
    info.header = BitstreamHeader::parse(bytes, payload_offset);
    info.header_bytes = payload_offset;
    info.payload_bytes = bytes.size() - payload_offset;
    if (info.header.kind == StreamKind::YCbCr420) {
        info.chunk_roles = info.header.crc
                               ? std::vector<std::string>{"y", "crc_cb", "crc_cr", "cbcr"}
                               : std::vector<std::string>{"y", "cbcr"};
    } else {
        info.chunk_roles = {"planes"};
    }
    return info;
}

}  // namespace scf
