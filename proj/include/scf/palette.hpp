// Stage 2: colors that escaped Stage 1 accumulate in an ordered palette. The
// palette is split around the predicted color into a near and a far
// sub-palette; two adaptive flags select palette membership and sub-palette,
// then the color index is coded from the sub-palette counts.
#ifndef SCF_PALETTE_HPP
#define SCF_PALETTE_HPP

#include <optional>
#include <unordered_map>
#include <vector>

#include "scf/context_model.hpp"
#include "scf/range_coder.hpp"
#include "scf/types.hpp"

namespace scf {

enum class PredictionSource : uint8_t { LmapLeft, LmapTop, Map };

struct Prediction {
    ColorTuple value;
    PredictionSource source = PredictionSource::Map;
};

// Clamped per-component MED: median(A, B, A+B-C) with the shared A->B->zero
// border substitution.
Prediction map_predict(const TupleBuffer& buf, int m, int n);

// Luma-guided MED over the chroma canvas: copy the left (then top) chroma
// tuple when the co-sited downsampled luma matches that neighbor, else fall
// back to map_predict. A missing comparand fails its condition.
Prediction lmap_predict(const TupleBuffer& chroma, const Plane& luma_q2, int m, int n);

class Palette {
public:
    bool contains(ColorTuple color) const { return index_.count(color) != 0; }
    size_t size() const { return entries_.size(); }
    const std::vector<std::pair<ColorTuple, uint32_t>>& entries() const {
        return entries_;
    }

    void insert_new(ColorTuple color);  // count 1, appended
    void bump(ColorTuple color);        // Stage-2 hit

    uint64_t state_digest() const;

private:
    static constexpr uint64_t kCompactionLimit = 1u << 16;

    std::vector<std::pair<ColorTuple, uint32_t>> entries_;
    std::unordered_map<ColorTuple, uint32_t, ColorTupleHash> index_;
    uint64_t total_ = 0;
};

// Entry indices, in palette order. CRC-disallowed entries appear in neither.
struct SubPalettes {
    std::vector<uint32_t> near;
    std::vector<uint32_t> far;
    bool empty() const { return near.empty() && far.empty(); }
};

// L-infinity similarity radius for the near sub-palette.
inline constexpr int kSimilarityRadius = 4;

SubPalettes split_palette(const Palette& palette, const Prediction& prediction,
                          const TupleFilter* filter, int arity);

// Adaptive binary model, counts start at 1/1.
class BinaryModel {
public:
    FrequencyView view(bool bit) const {
        return bit ? FrequencyView{c0_, c0_ + c1_, c0_ + c1_}
                   : FrequencyView{0, c0_, c0_ + c1_};
    }
    bool bit_for(uint32_t target) const { return target >= c0_; }
    void bump(bool bit) {
        (bit ? c1_ : c0_) += 1;
        if (c0_ + c1_ > (1u << 16)) {
            c0_ = std::max(1u, c0_ / 2);
            c1_ = std::max(1u, c1_ / 2);
        }
    }
    uint32_t total() const { return c0_ + c1_; }

private:
    uint32_t c0_ = 1, c1_ = 1;
};

struct Stage2Models {
    BinaryModel in_palette;
    BinaryModel near_far;
};

// Returns true when the color was coded from the palette; false leaves the
// color unknown for Stage 3. The boost tuple's count is doubled at estimation
// time only.
bool stage2_encode(RangeEncoder& enc, Stage2Models& models, Palette& palette,
                   const SubPalettes& subs, ColorTuple color, const ColorTuple* boost);
std::optional<ColorTuple> stage2_decode(RangeDecoder& dec, Stage2Models& models,
                                        Palette& palette, const SubPalettes& subs,
                                        const ColorTuple* boost);

}  // namespace scf

#endif
