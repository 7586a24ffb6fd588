// Byte-wise adaptive range coder. Carries are absorbed in a 64-bit low
// accumulator and resolved through a cache byte plus a run of pending 0xFF
// bytes, so the emitted stream needs no carry rewinds. Renormalization keeps
// range >= 2^24, which together with the 2^24 cap on model totals guarantees
// every interval maps to at least one code point.
#ifndef SCF_RANGE_CODER_HPP
#define SCF_RANGE_CODER_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "scf/types.hpp"

namespace scf {

// One symbol's slice of a cumulative frequency table.
struct FrequencyView {
    uint32_t cum_lo = 0;
    uint32_t cum_hi = 0;
    uint32_t total = 0;
};

inline constexpr uint32_t kMaxModelTotal = 1u << 24;
inline constexpr uint32_t kRenormThreshold = 1u << 24;

namespace detail {
inline void check_interval(const FrequencyView& fv) {
    if (fv.cum_lo >= fv.cum_hi || fv.cum_hi > fv.total)
        throw ModelError("zero-width or out-of-range interval");
    if (fv.total > kMaxModelTotal)
        throw ModelError("model total exceeds 2^24");
}
}  // namespace detail

class RangeEncoder {
public:
    void encode(const FrequencyView& fv) {
        detail::check_interval(fv);
        const uint32_t step = range_ / fv.total;
        low_ += uint64_t(step) * fv.cum_lo;
        range_ = step * (fv.cum_hi - fv.cum_lo);
        while (range_ < kRenormThreshold) {
            shift_low();
            range_ <<= 8;
        }
    }

    // Emits the cache, pending carries and the full 32-bit window; after this
    // the decoder can reconstruct every coded symbol without reading past the
    // returned bytes. The stream starts with one ignored zero byte.
    std::vector<uint8_t> finish() {
        const uint32_t lo32 = uint32_t(low_);
        const uint32_t carry = uint32_t(low_ >> 32);
        out_.push_back(uint8_t(cache_ + carry));
        for (; pending_ > 0; --pending_)
            out_.push_back(uint8_t(0xFF + carry));
        for (int shift = 24; shift >= 0; shift -= 8)
            out_.push_back(uint8_t(lo32 >> shift));
        return std::move(out_);
    }

private:
    void shift_low() {
        const uint32_t lo32 = uint32_t(low_);
        const uint32_t carry = uint32_t(low_ >> 32);
        if (lo32 < 0xFF000000u || carry != 0) {
            out_.push_back(uint8_t(cache_ + carry));
            for (; pending_ > 0; --pending_)
                out_.push_back(uint8_t(0xFF + carry));
            cache_ = uint8_t(lo32 >> 24);
        } else {
            ++pending_;
        }
        low_ = uint64_t(lo32 & 0x00FFFFFFu) << 8;
    }

    std::vector<uint8_t> out_;
    uint64_t low_ = 0;
    uint32_t range_ = 0xFFFFFFFFu;
    uint8_t cache_ = 0;
    uint64_t pending_ = 0;
};

class RangeDecoder {
public:
    explicit RangeDecoder(std::span<const uint8_t> bytes) : in_(bytes) {
        for (int i = 0; i < 5; ++i)
            code_ = code_ << 8 | next_byte();
    }

    // Scaled code value in [0, total); the caller maps it to a symbol interval
    // and then consumes that interval.
    uint32_t decode_target(uint32_t total) {
        if (total == 0 || total > kMaxModelTotal)
            throw ModelError("bad model total");
        step_ = range_ / total;
        const uint32_t target = code_ / step_;
        if (target >= total)
            throw StreamError("code value outside model range");
        return target;
    }

    void consume(const FrequencyView& fv) {
        detail::check_interval(fv);
        code_ -= step_ * fv.cum_lo;
        range_ = step_ * (fv.cum_hi - fv.cum_lo);
        while (range_ < kRenormThreshold) {
            code_ = code_ << 8 | next_byte();
            range_ <<= 8;
        }
    }

    size_t bytes_consumed() const { return pos_; }

private:
    uint8_t next_byte() {
        if (pos_ >= in_.size())
            throw StreamError("arithmetic stream truncated");
        return in_[pos_++];
    }

    std::span<const uint8_t> in_;
    size_t pos_ = 0;
    uint32_t code_ = 0;
    uint32_t range_ = 0xFFFFFFFFu;
    uint32_t step_ = 0;
};

}  // namespace scf

#endif
