// Per-pixel stage flow over one plane set, in raster order: try the context
// histograms, fall back to the palette, fall back to residual coding, then
// update every model. Encoder and decoder walk the exact same state
// trajectory.
#ifndef SCF_PIPELINE_HPP
#define SCF_PIPELINE_HPP

#include <initializer_list>
#include <vector>

#include "scf/context_model.hpp"
#include "scf/range_coder.hpp"
#include "scf/types.hpp"

namespace scf {

class ChromaRangeTable;

struct PipelineConfig {
    int arity = 1;
    int bitdepth = 8;
    bool lmap = false;   // arity 2 only
    bool boost = false;  // arity 2 only
    const ChromaRangeTable* crc = nullptr;  // arity 2 only
    const Plane* luma_q2 = nullptr;         // s=2 quantized luma, chroma resolution
    const Plane* luma_qcrc = nullptr;       // s_CRC quantized luma, chroma resolution
    Stage1Trace* trace = nullptr;
};

struct PipelineStats {
    uint64_t stage1_coded = 0;
    uint64_t stage1_escaped = 0;
    uint64_t stage2_coded = 0;
    uint64_t stage3_coded = 0;
    uint64_t state_digest = 0;
};

void encode_plane_set(std::initializer_list<const Plane*> planes,
                      const PipelineConfig& config, RangeEncoder& enc,
                      PipelineStats* stats = nullptr);
void encode_plane_set(const std::vector<const Plane*>& planes,
                      const PipelineConfig& config, RangeEncoder& enc,
                      PipelineStats* stats = nullptr);

std::vector<Plane> decode_plane_set(const PipelineConfig& config, RangeDecoder& dec,
                                    int width, int height,
                                    PipelineStats* stats = nullptr);

}  // namespace scf

#endif
