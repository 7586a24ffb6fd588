#include "scf/pipeline.hpp"

#include <unordered_map>

#include "scf/chroma_range.hpp"
#include "scf/palette.hpp"
#include "scf/residual.hpp"

namespace scf {

namespace {

void check_config(const PipelineConfig& cfg) {
    if (cfg.arity < 1 || cfg.arity > 3)
        throw UsageError("plane set arity must be 1, 2 or 3");
    if ((cfg.lmap || cfg.boost || cfg.crc) && cfg.arity != 2)
        throw UsageError("LMAP, boost and CRC filtering apply to the chroma pass only");
    if (cfg.lmap && !cfg.luma_q2)
        throw UsageError("LMAP requires the s=2 quantized luma plane");
    if (cfg.crc && !cfg.luma_qcrc)
        throw UsageError("CRC filtering requires the s_CRC quantized luma plane");
    if (cfg.bitdepth < 1 || cfg.bitdepth > 8)
        throw UsageError("bitdepth out of range");
}

// Shared per-pixel machinery; the encoder fills the canvas up front, the
// decoder as it goes, so every extract/predict call sees causal data only.
class Engine {
public:
    Engine(const PipelineConfig& cfg, int width, int height)
        : cfg_(cfg), buf_(width, height, cfg.arity, cfg.bitdepth) {
        err_hists_.reserve(size_t(cfg.arity));
        for (int c = 0; c < cfg.arity; ++c)
            err_hists_.emplace_back(cfg.bitdepth);
        if (cfg_.crc) {
            if (cfg_.luma_qcrc->width != width || cfg_.luma_qcrc->height != height)
                throw UsageError("quantized luma plane does not match chroma geometry");
        }
        if (cfg_.lmap) {
            if (cfg_.luma_q2->width != width || cfg_.luma_q2->height != height)
                throw UsageError("quantized luma plane does not match chroma geometry");
        }
    }

    TupleBuffer& canvas() { return buf_; }

    void encode_pixel(RangeEncoder& enc, int m, int n) {
        const ColorTuple color = buf_.at(m, n);
        const PatternKey key = extract_pattern(buf_, m, n);
        const Stage1View view = stage1_view(key, m, n);

        const bool coded = stage1_encode(enc, view, color, cfg_.trace);
        if (coded) {
            ++stats_.stage1_coded;
        } else {
            ++stats_.stage1_escaped;
            const SubPalettes subs = split_palette(palette_, pred_, filter(), cfg_.arity);
            if (stage2_encode(enc, models_, palette_, subs, color, boost())) {
                ++stats_.stage2_coded;
            } else {
                ++stats_.stage3_coded;
                for (int c = 0; c < cfg_.arity; ++c)
                    err_hists_[size_t(c)].encode(enc, pred_.value.comp(c),
                                                 color.comp(c), component_mask(c));
                palette_.insert_new(color);
            }
        }
        store_.update(key, color, !coded);
    }

    void decode_pixel(RangeDecoder& dec, int m, int n) {
        const PatternKey key = extract_pattern(buf_, m, n);
        const Stage1View view = stage1_view(key, m, n);

        ColorTuple color;
        bool escaped = false;
        if (auto c = stage1_decode(dec, view, cfg_.trace)) {
            ++stats_.stage1_coded;
            color = *c;
        } else {
            escaped = true;
            ++stats_.stage1_escaped;
            const SubPalettes subs = split_palette(palette_, pred_, filter(), cfg_.arity);
            if (auto c2 = stage2_decode(dec, models_, palette_, subs, boost())) {
                ++stats_.stage2_coded;
                color = *c2;
            } else {
                ++stats_.stage3_coded;
                for (int c = 0; c < cfg_.arity; ++c) {
                    const int v = err_hists_[size_t(c)].decode(
                        dec, pred_.value.comp(c), component_mask(c));
                    color.set_comp(c, uint8_t(v));
                }
                palette_.insert_new(color);
            }
        }
        buf_.set(m, n, color);
        store_.update(key, color, escaped);
    }

    PipelineStats stats() const {
        PipelineStats s = stats_;
        uint64_t h = store_.state_digest();
        h = h * 0x100000001B3ull ^ palette_.state_digest();
        for (const ErrorHistogram& eh : err_hists_)
            h = h * 0x100000001B3ull ^ eh.state_digest();
        s.state_digest = h;
        return s;
    }

private:
    // Prediction, CRC masks and the Stage-1 coding view for the current pixel.
    // The prediction is needed even on the Stage-1 path when boost is active.
    Stage1View stage1_view(const PatternKey& key, int m, int n) {
        pred_ = cfg_.lmap ? lmap_predict(buf_, *cfg_.luma_q2, m, n)
                          : map_predict(buf_, m, n);
        if (cfg_.crc) {
            const int block = cfg_.crc->block_of(m, n);
            const int yq = cfg_.luma_qcrc->at(m, n);
            const uint32_t slot = uint32_t(block) << 16 | uint32_t(yq);
            auto it = mask_memo_.find(slot);
            if (it == mask_memo_.end()) {
                it = mask_memo_
                         .emplace(slot, std::array<ValueMask, 2>{
                                            cfg_.crc->allowed_values(0, block, yq),
                                            cfg_.crc->allowed_values(1, block, yq)})
                         .first;
            }
            masks_ = &it->second;
            filter_ = TupleFilter{&(*masks_)[0], &(*masks_)[1]};
        }
        const MergedHistogram merged = store_.merge(key);
        return make_stage1_view(merged, filter(), boost());
    }

    const TupleFilter* filter() const { return cfg_.crc ? &filter_ : nullptr; }
    const ColorTuple* boost() const {
        return (cfg_.boost && pred_.source != PredictionSource::Map) ? &pred_.value
                                                                     : nullptr;
    }
    const ValueMask* component_mask(int c) const {
        return cfg_.crc ? &(*masks_)[size_t(c)] : nullptr;
    }

    PipelineConfig cfg_;
    TupleBuffer buf_;
    ContextStore store_;
    Palette palette_;
    Stage2Models models_;
    std::vector<ErrorHistogram> err_hists_;
    Prediction pred_;
    TupleFilter filter_;
    const std::array<ValueMask, 2>* masks_ = nullptr;
    std::unordered_map<uint32_t, std::array<ValueMask, 2>> mask_memo_;
    PipelineStats stats_;
};

}  // namespace

void encode_plane_set(const std::vector<const Plane*>& planes,
                      const PipelineConfig& config, RangeEncoder& enc,
                      PipelineStats* stats) {
    check_config(config);
    if (int(planes.size()) != config.arity)
        throw UsageError("plane count does not match configured arity");
    for (const Plane* p : planes)
        if (p->bitdepth != config.bitdepth)
            throw UsageError("plane bitdepth does not match configuration");

    Engine engine(config, planes[0]->width, planes[0]->height);
    engine.canvas() = TupleBuffer::interleave(planes);
    for (int m = 0; m < planes[0]->height; ++m)
        for (int n = 0; n < planes[0]->width; ++n)
            engine.encode_pixel(enc, m, n);
    if (stats)
        *stats = engine.stats();
}

void encode_plane_set(std::initializer_list<const Plane*> planes,
                      const PipelineConfig& config, RangeEncoder& enc,
                      PipelineStats* stats) {
    encode_plane_set(std::vector<const Plane*>(planes), config, enc, stats);
}

std::vector<Plane> decode_plane_set(const PipelineConfig& config, RangeDecoder& dec,
                                    int width, int height, PipelineStats* stats) {
    check_config(config);
    if (width <= 0 || height <= 0)
        throw UsageError("bad plane dimensions");

    Engine engine(config, width, height);
    for (int m = 0; m < height; ++m)
        for (int n = 0; n < width; ++n)
            engine.decode_pixel(dec, m, n);
    if (stats)
        *stats = engine.stats();
    return engine.canvas().split();
}

}  // namespace scf
