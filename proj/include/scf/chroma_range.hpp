// Luma-dependent chroma range tables: per spatial block and per chroma
// channel, a bitmap over (quantized luma, chroma partition) pairs recording
// which combinations occur in the image. Transmitted as small binary images
// and used to shrink the coding alphabets of all three stages.
#ifndef SCF_CHROMA_RANGE_HPP
#define SCF_CHROMA_RANGE_HPP

#include <array>
#include <utility>
#include <vector>

#include "scf/context_model.hpp"
#include "scf/types.hpp"

namespace scf {

struct CrcParams {
    int blocks = 4;       // b: blocks per axis
    int partitions = 64;  // p: chroma range partitions
    int luma_scale = 64;  // s_CRC: luma precision scaling parameter

    // Grid: b in {1,2,4}; p in {4..128} pow2; s in {2..128} pow2.
    void validate() const;
    bool operator==(const CrcParams&) const = default;
};

// floor((sum of the 2x2 luma block + s/2) / s), at chroma resolution.
Plane quantize_luma(const Plane& luma, int s);

// Largest value quantize_luma can produce for the given depth and scale.
int quantized_luma_max(int bitdepth, int s);

// Partition i covers [floor(i*(c_max+1)/p), floor((i+1)*(c_max+1)/p) - 1].
std::pair<int, int> partition_bounds(int i, int p, int c_max);
int partition_of(int value, int p, int c_max);

class ChromaRangeTable {
public:
    ChromaRangeTable(CrcParams params, int chroma_width, int chroma_height, int y_max);

    static ChromaRangeTable build(const Image420& image, CrcParams params);

    const CrcParams& params() const { return params_; }
    int y_max() const { return y_max_; }
    int chroma_width() const { return chroma_width_; }
    int chroma_height() const { return chroma_height_; }

    // Flattened index of the block containing chroma position (m, n); block
    // boundaries along each axis sit at floor(k * dim / b).
    int block_of(int m, int n) const {
        return row_block_[size_t(m)] * params_.blocks + col_block_[size_t(n)];
    }

    bool test(int channel, int block, int yq, int part) const {
        return bits_[bit_index(channel, block, yq, part)] != 0;
    }
    void set(int channel, int block, int yq, int part) {
        bits_[bit_index(channel, block, yq, part)] = 1;
    }

    // Union of the partition ranges flagged for (block, yq).
    ValueMask allowed_values(int channel, int block, int yq) const;

    // One binary image per channel: a b x b grid of tiles, each tile
    // (y_max+1) rows (top row = quantized luma 0) by p partition columns.
    Plane to_bitmap(int channel) const;
    static ChromaRangeTable from_bitmaps(CrcParams params, int chroma_width,
                                         int chroma_height, int y_max,
                                         const Plane& cb_bitmap, const Plane& cr_bitmap);

    // Bitmaps coded with an arity-1 pipeline over the {0,1} alphabet.
    std::array<std::vector<uint8_t>, 2> encode_chunks() const;
    static ChromaRangeTable decode_chunks(CrcParams params, int chroma_width,
                                          int chroma_height, int y_max,
                                          std::span<const uint8_t> cb_chunk,
                                          std::span<const uint8_t> cr_chunk);

    bool operator==(const ChromaRangeTable&) const = default;

private:
    size_t bit_index(int channel, int block, int yq, int part) const;

    CrcParams params_;
    int chroma_width_ = 0;
    int chroma_height_ = 0;
    int y_max_ = 0;
    std::vector<uint8_t> bits_;
    std::vector<int> row_block_;
    std::vector<int> col_block_;
};

// True when every (position, quantized luma, chroma) combination occurring in
// the image has its bit set; decoder correctness rests on this.
bool tables_complete_for(const ChromaRangeTable& table, const Image420& image);

}  // namespace scf

#endif
