// Stage 3: unknown colors are coded per component as prediction errors from
// adaptive histograms over a zig-zag folded modular error alphabet.
#ifndef SCF_RESIDUAL_HPP
#define SCF_RESIDUAL_HPP

#include <vector>

#include "scf/context_model.hpp"
#include "scf/range_coder.hpp"
#include "scf/types.hpp"

namespace scf {

// (value - predicted) mod 2^bitdepth, folded as {0, -1, +1, -2, +2, ...};
// a bijection between [0, 2^bitdepth) values and indices for any predictor.
int zigzag_index(int value, int predicted, int bitdepth);
int zigzag_value(int index, int predicted, int bitdepth);

class ErrorHistogram {
public:
    explicit ErrorHistogram(int bitdepth)
        : bitdepth_(bitdepth), counts_(size_t(1) << bitdepth, 1),
          total_(size_t(1) << bitdepth) {}

    // The allowed mask restricts the alphabet to errors whose reconstructed
    // value is admissible; counts renormalize implicitly via the smaller
    // total. Null mask means unrestricted.
    void encode(RangeEncoder& enc, int predicted, int value, const ValueMask* allowed);
    int decode(RangeDecoder& dec, int predicted, const ValueMask* allowed);

    uint32_t count_at(int index) const { return counts_[size_t(index)]; }
    uint64_t total() const { return total_; }
    uint64_t state_digest() const;

private:
    static constexpr uint64_t kCompactionLimit = 1u << 16;

    void bump(int index);

    int bitdepth_;
    std::vector<uint32_t> counts_;
    uint64_t total_;
};

}  // namespace scf

#endif
