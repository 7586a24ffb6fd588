#include "scf/chroma_range.hpp"

#include <algorithm>

#include "scf/pipeline.hpp"

namespace scf {

namespace {

bool pow2_in(int v, int lo, int hi) {
    return v >= lo && v <= hi && (v & (v - 1)) == 0;
}

std::vector<int> block_lookup(int dim, int blocks) {
    std::vector<int> lut(size_t(dim), 0);
    for (int k = 0; k < blocks; ++k) {
        const int begin = k * dim / blocks;
        const int end = (k + 1) * dim / blocks;
        for (int i = begin; i < end; ++i)
            lut[size_t(i)] = k;
    }
    return lut;
}

}  // namespace

void CrcParams::validate() const {
    if (blocks != 1 && blocks != 2 && blocks != 4)
        throw UsageError("CRC blocks must be 1, 2 or 4");
    if (!pow2_in(partitions, 4, 128))
        throw UsageError("CRC partitions must be a power of two in [4,128]");
    if (!pow2_in(luma_scale, 2, 128))
        throw UsageError("CRC luma scale must be a power of two in [2,128]");
}

Plane quantize_luma(const Plane& luma, int s) {
    if (s <= 0)
        throw UsageError("luma scale must be positive");
    if (luma.width % 2 != 0 || luma.height % 2 != 0)
        throw FormatError("luma quantization requires even dimensions");
    Plane out(luma.width / 2, luma.height / 2, 16);
    for (int m = 0; m < out.height; ++m)
        for (int n = 0; n < out.width; ++n) {
            const int sum = luma.at(2 * m, 2 * n) + luma.at(2 * m, 2 * n + 1) +
                            luma.at(2 * m + 1, 2 * n) + luma.at(2 * m + 1, 2 * n + 1);
            out.set(m, n, uint16_t((sum + s / 2) / s));
        }
    return out;
}

int quantized_luma_max(int bitdepth, int s) {
    const int maxval = (1 << bitdepth) - 1;
    return (4 * maxval + s / 2) / s;
}

std::pair<int, int> partition_bounds(int i, int p, int c_max) {
    if (i < 0 || i >= p)
        throw UsageError("partition index out of range");
    return {i * (c_max + 1) / p, (i + 1) * (c_max + 1) / p - 1};
}

int partition_of(int value, int p, int c_max) {
    const int i = value * p / (c_max + 1);
    return std::min(i, p - 1);
}

ChromaRangeTable::ChromaRangeTable(CrcParams params, int chroma_width,
                                   int chroma_height, int y_max)
    : params_(params), chroma_width_(chroma_width), chroma_height_(chroma_height),
      y_max_(y_max) {
    params_.validate();
    if (chroma_width <= 0 || chroma_height <= 0 || y_max < 0)
        throw UsageError("bad chroma range table geometry");
    bits_.assign(size_t(2) * params_.blocks * params_.blocks * (y_max_ + 1) *
                     params_.partitions,
                 0);
    row_block_ = block_lookup(chroma_height_, params_.blocks);
    col_block_ = block_lookup(chroma_width_, params_.blocks);
}

size_t ChromaRangeTable::bit_index(int channel, int block, int yq, int part) const {
    return ((size_t(channel) * params_.blocks * params_.blocks + block) *
                (y_max_ + 1) +
            yq) *
               params_.partitions +
           part;
}

ChromaRangeTable ChromaRangeTable::build(const Image420& image, CrcParams params) {
    validate(image);
    const Plane luma_q = quantize_luma(image.y, params.luma_scale);
    const int y_max = quantized_luma_max(image.y.bitdepth, params.luma_scale);
    const int c_max = image.cb.max_value();

    ChromaRangeTable table(params, image.cb.width, image.cb.height, y_max);
    for (int m = 0; m < image.cb.height; ++m)
        for (int n = 0; n < image.cb.width; ++n) {
            const int block = table.block_of(m, n);
            const int yq = luma_q.at(m, n);
            table.set(0, block, yq, partition_of(image.cb.at(m, n), params.partitions, c_max));
            table.set(1, block, yq, partition_of(image.cr.at(m, n), params.partitions, c_max));
        }
    return table;
}

ValueMask ChromaRangeTable::allowed_values(int channel, int block, int yq) const {
    ValueMask mask;
    const int c_max = 255;
    for (int i = 0; i < params_.partitions; ++i) {
        if (!test(channel, block, yq, i))
            continue;
        const auto [lo, hi] = partition_bounds(i, params_.partitions, c_max);
        for (int v = lo; v <= hi; ++v)
            mask.set(size_t(v));
    }
    return mask;
}

Plane ChromaRangeTable::to_bitmap(int channel) const {
    const int tile_h = y_max_ + 1;
    const int tile_w = params_.partitions;
    Plane bitmap(params_.blocks * tile_w, params_.blocks * tile_h, 1);
    for (int br = 0; br < params_.blocks; ++br)
        for (int bc = 0; bc < params_.blocks; ++bc) {
            const int block = br * params_.blocks + bc;
            for (int yq = 0; yq < tile_h; ++yq)
                for (int part = 0; part < tile_w; ++part)
                    bitmap.set(br * tile_h + yq, bc * tile_w + part,
                               test(channel, block, yq, part) ? 1 : 0);
        }
    return bitmap;
}

ChromaRangeTable ChromaRangeTable::from_bitmaps(CrcParams params, int chroma_width,
                                                int chroma_height, int y_max,
                                                const Plane& cb_bitmap,
                                                const Plane& cr_bitmap) {
    ChromaRangeTable table(params, chroma_width, chroma_height, y_max);
    const int tile_h = y_max + 1;
    const int tile_w = params.partitions;
    for (const Plane* bm : {&cb_bitmap, &cr_bitmap}) {
        if (bm->width != params.blocks * tile_w || bm->height != params.blocks * tile_h)
            throw StreamError("chroma range bitmap has wrong geometry");
    }
    for (int channel = 0; channel < 2; ++channel) {
        const Plane& bm = channel == 0 ? cb_bitmap : cr_bitmap;
        for (int br = 0; br < params.blocks; ++br)
            for (int bc = 0; bc < params.blocks; ++bc) {
                const int block = br * params.blocks + bc;
                for (int yq = 0; yq < tile_h; ++yq)
                    for (int part = 0; part < tile_w; ++part)
                        if (bm.at(br * tile_h + yq, bc * tile_w + part))
                            table.set(channel, block, yq, part);
            }
    }
    return table;
}

std::array<std::vector<uint8_t>, 2> ChromaRangeTable::encode_chunks() const {
    std::array<std::vector<uint8_t>, 2> chunks;
    for (int channel = 0; channel < 2; ++channel) {
        const Plane bitmap = to_bitmap(channel);
        PipelineConfig cfg;
        cfg.arity = 1;
        cfg.bitdepth = 1;
        RangeEncoder enc;
        encode_plane_set({&bitmap}, cfg, enc);
        chunks[size_t(channel)] = enc.finish();
    }
    return chunks;
}

ChromaRangeTable ChromaRangeTable::decode_chunks(CrcParams params, int chroma_width,
                                                 int chroma_height, int y_max,
                                                 std::span<const uint8_t> cb_chunk,
                                                 std::span<const uint8_t> cr_chunk) {
    params.validate();
    const int w = params.blocks * params.partitions;
    const int h = params.blocks * (y_max + 1);
    std::array<Plane, 2> bitmaps;
    for (int channel = 0; channel < 2; ++channel) {
        PipelineConfig cfg;
        cfg.arity = 1;
        cfg.bitdepth = 1;
        RangeDecoder dec(channel == 0 ? cb_chunk : cr_chunk);
        bitmaps[size_t(channel)] = std::move(decode_plane_set(cfg, dec, w, h)[0]);
    }
    return from_bitmaps(params, chroma_width, chroma_height, y_max, bitmaps[0],
                        bitmaps[1]);
}

bool tables_complete_for(const ChromaRangeTable& table, const Image420& image) {
    const Plane luma_q = quantize_luma(image.y, table.params().luma_scale);
    const int c_max = image.cb.max_value();
    const int p = table.params().partitions;
    for (int m = 0; m < image.cb.height; ++m)
        for (int n = 0; n < image.cb.width; ++n) {
            const int block = table.block_of(m, n);
            const int yq = luma_q.at(m, n);
            if (!table.test(0, block, yq, partition_of(image.cb.at(m, n), p, c_max)))
                return false;
            if (!table.test(1, block, yq, partition_of(image.cr.at(m, n), p, c_max)))
                return false;
        }
    return true;
}

}  // namespace scf
