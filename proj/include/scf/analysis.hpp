// Measurement toolkit: normalized mutual information between planes, MAP/LMAP
// prediction quality on chroma, and the three-variant ablation runner.
#ifndef SCF_ANALYSIS_HPP
#define SCF_ANALYSIS_HPP

#include <string>
#include <utility>
#include <vector>

#include "scf/codec.hpp"
#include "scf/types.hpp"

namespace scf {

// 2(H(a) - H(a|b)) / (H(a) + H(b)) from the exact empirical joint histogram,
// in bits. Planes must share dimensions (upsample chroma first). Both planes
// constant degenerates to 0/0 and is defined as 0.
double nmi(const Plane& a, const Plane& b);

enum class Predictor { Map, Lmap };

struct PredictionStats {
    double mae = 0.0;          // mean |error| over both chroma components
    double match_ratio = 0.0;  // both components exact
    uint64_t positions = 0;    // positions entering the MAE
    uint64_t fired = 0;        // positions where a luma condition fired (LMAP)
};

// Predictions use true neighbors. The first chroma position has no causal
// neighbor at all and is excluded. For LMAP the match ratio is restricted to
// positions where a luma condition fired; for MAP it covers all positions.
PredictionStats prediction_stats(const Image420& image, Predictor predictor);

struct AblationVariant {
    std::string name;
    EncoderConfig config;
};

// full / no-CRC / no-CRC-no-LMAP, in that order.
std::vector<AblationVariant> ablation_variants(CrcParams params = {});

struct AblationRow {
    std::string name;
    bool ok = false;
    std::string error;
    std::vector<double> bpp;  // one per variant
};

struct AblationReport {
    std::vector<std::string> variant_names;
    std::vector<AblationRow> rows;
    std::vector<double> mean_bpp;  // over images that encoded under all variants
    std::vector<double> percent;   // vs. the first variant
};

// Encodes every image under every variant, verifies lossless reconstruction,
// and reports bpp (bits over luma pixels). Failures are recorded per image and
// the run continues.
AblationReport run_ablation(const std::vector<std::pair<std::string, Image420>>& corpus,
                            const std::vector<AblationVariant>& variants);

std::string ablation_csv(const AblationReport& report);

}  // namespace scf

#endif
