#include "scf/residual.hpp"

#include <algorithm>

namespace scf {

int zigzag_index(int value, int predicted, int bitdepth) {
    const int range = 1 << bitdepth;
    const int half = range / 2;
    int e = (value - predicted) % range;
    if (e < 0)
        e += range;
    if (e >= half)
        e -= range;  // signed error in [-range/2, range/2)
    return e == 0 ? 0 : (e > 0 ? 2 * e : -2 * e - 1);
}

int zigzag_value(int index, int predicted, int bitdepth) {
    const int range = 1 << bitdepth;
    const int e = (index % 2 == 0) ? index / 2 : -(index + 1) / 2;
    int v = (predicted + e) % range;
    if (v < 0)
        v += range;
    return v;
}

void ErrorHistogram::bump(int index) {
    counts_[size_t(index)] += 1;
    total_ += 1;
    if (total_ > kCompactionLimit) {
        total_ = 0;
        for (uint32_t& c : counts_) {
            c = std::max(1u, c / 2);
            total_ += c;
        }
    }
}

void ErrorHistogram::encode(RangeEncoder& enc, int predicted, int value,
                            const ValueMask* allowed) {
    const int range = 1 << bitdepth_;
    uint32_t cum = 0, lo = 0, hi = 0;
    const int want = zigzag_index(value, predicted, bitdepth_);
    for (int z = 0; z < range; ++z) {
        if (allowed && !(*allowed)[size_t(zigzag_value(z, predicted, bitdepth_))])
            continue;
        if (z == want) {
            lo = cum;
            hi = cum + counts_[size_t(z)];
        }
        cum += counts_[size_t(z)];
    }
    if (hi == 0)
        throw ModelError("true value excluded from the residual alphabet");
    enc.encode({lo, hi, cum});
    bump(want);
}

int ErrorHistogram::decode(RangeDecoder& dec, int predicted, const ValueMask* allowed) {
    const int range = 1 << bitdepth_;
    uint32_t total = 0;
    for (int z = 0; z < range; ++z) {
        if (allowed && !(*allowed)[size_t(zigzag_value(z, predicted, bitdepth_))])
            continue;
        total += counts_[size_t(z)];
    }
    if (total == 0)
        throw StreamError("empty residual alphabet");

    const uint32_t target = dec.decode_target(total);
    uint32_t cum = 0;
    for (int z = 0; z < range; ++z) {
        if (allowed && !(*allowed)[size_t(zigzag_value(z, predicted, bitdepth_))])
            continue;
        if (target < cum + counts_[size_t(z)]) {
            dec.consume({cum, cum + counts_[size_t(z)], total});
            bump(z);
            return zigzag_value(z, predicted, bitdepth_);
        }
        cum += counts_[size_t(z)];
    }
    throw StreamError("residual target outside alphabet");
}

uint64_t ErrorHistogram::state_digest() const {
    uint64_t h = 0xCBF29CE484222325ull;
    for (uint32_t c : counts_) {
        h ^= c;
        h *= 0x100000001B3ull;
    }
    return h;
}

}  // namespace scf
