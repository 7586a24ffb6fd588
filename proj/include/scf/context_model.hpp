// Stage 1: the pattern->histogram store. Every coded pixel files its color
// under the exact 6-neighbor pattern; coding a pixel merges the histograms of
// all patterns similar to the current one and codes the color (or an escape)
// from the merged counts.
#ifndef SCF_CONTEXT_MODEL_HPP
#define SCF_CONTEXT_MODEL_HPP

#include <array>
#include <bitset>
#include <optional>
#include <unordered_map>
#include <vector>

#include "scf/range_coder.hpp"
#include "scf/types.hpp"

namespace scf {

// Working canvas for one plane set: the encoder fills it up front, the decoder
// fills it pixel by pixel, so pattern extraction only ever reads causal cells.
class TupleBuffer {
public:
    TupleBuffer(int width, int height, int arity, int bitdepth)
        : width_(width), height_(height), arity_(arity), bitdepth_(bitdepth),
          cells_(size_t(width) * size_t(height)) {}

    static TupleBuffer interleave(const std::vector<const Plane*>& planes);
    std::vector<Plane> split() const;

    int width() const { return width_; }
    int height() const { return height_; }
    int arity() const { return arity_; }
    int bitdepth() const { return bitdepth_; }

    bool in_bounds(int m, int n) const {
        return m >= 0 && m < height_ && n >= 0 && n < width_;
    }
    ColorTuple at(int m, int n) const { return cells_[size_t(m) * width_ + n]; }
    void set(int m, int n, ColorTuple t) { cells_[size_t(m) * width_ + n] = t; }

private:
    int width_, height_, arity_, bitdepth_;
    std::vector<ColorTuple> cells_;
};

// Neighbor constellation, in the fixed order A=left, B=above, C=above-left,
// D=above-right, E=left-left, F=above-above.
struct PatternKey {
    std::array<ColorTuple, 6> n;
    bool operator==(const PatternKey&) const = default;
};

struct PatternKeyHash {
    size_t operator()(const PatternKey& k) const {
        uint64_t h = 0xCBF29CE484222325ull;
        for (ColorTuple t : k.n) {
            h ^= t.packed();
            h *= 0x100000001B3ull;
        }
        return size_t(h);
    }
};

// Out-of-bounds neighbors take the nearest causal in-bounds value in the
// order A -> B -> zero tuple.
PatternKey extract_pattern(const TupleBuffer& buf, int m, int n);

struct MergedHistogram {
    std::vector<std::pair<ColorTuple, uint32_t>> counts;  // deterministic order
    uint32_t escape = 1;
    uint64_t total = 1;  // sum of counts + escape
};

// Per-position admissibility of component values, backed by the chroma range
// tables. Filtering never touches the escape count.
using ValueMask = std::bitset<256>;

struct TupleFilter {
    const ValueMask* mask0 = nullptr;
    const ValueMask* mask1 = nullptr;
    bool allows(ColorTuple t) const {
        return (*mask0)[t.comp(0)] && (*mask1)[t.comp(1)];
    }
};

class ContextStore {
public:
    // Merge tiers: the exact-match histogram when it is populated enough,
    // widened to all patterns sharing {A,B,C,D}, then {A,B}, while the merged
    // total stays under the tier threshold. An empty result degenerates to the
    // escape-only distribution.
    static constexpr uint32_t kTierThreshold = 16;

    MergedHistogram merge(const PatternKey& key) const;
    void update(const PatternKey& key, ColorTuple color, bool was_escape);

    size_t entry_count() const { return entries_.size(); }
    uint64_t state_digest() const;

private:
    struct Entry {
        std::vector<std::pair<ColorTuple, uint32_t>> counts;
        uint32_t escape = 1;
        uint64_t total = 1;
    };

    // Entry totals are kept under 2^16 so even multi-entry merges stay far
    // from the coder's 2^24 cap in ordinary content.
    static constexpr uint64_t kCompactionLimit = 1u << 16;

    void accumulate(MergedHistogram& out, uint32_t entry_index) const;

    using Prefix2 = uint64_t;
    using Prefix4 = std::array<uint32_t, 4>;
    struct Prefix4Hash {
        size_t operator()(const Prefix4& p) const {
            uint64_t h = 0xCBF29CE484222325ull;
            for (uint32_t v : p) {
                h ^= v;
                h *= 0x100000001B3ull;
            }
            return size_t(h);
        }
    };

    static Prefix2 prefix2_of(const PatternKey& k) {
        return uint64_t(k.n[0].packed()) | uint64_t(k.n[1].packed()) << 32;
    }
    static Prefix4 prefix4_of(const PatternKey& k) {
        return {k.n[0].packed(), k.n[1].packed(), k.n[2].packed(), k.n[3].packed()};
    }

    std::vector<Entry> entries_;
    std::vector<PatternKey> keys_;
    std::unordered_map<PatternKey, uint32_t, PatternKeyHash> exact_;
    std::unordered_map<Prefix4, std::vector<uint32_t>, Prefix4Hash> prefix4_;
    std::unordered_map<Prefix2, std::vector<uint32_t>> prefix2_;
};

// The merged histogram as the coder sees it: CRC-disallowed colors dropped,
// the boosted tuple's count doubled, totals rescaled under the coder cap.
struct Stage1View {
    std::vector<std::pair<ColorTuple, uint32_t>> counts;
    uint32_t escape = 1;
    uint32_t total = 1;
};

Stage1View make_stage1_view(const MergedHistogram& merged, const TupleFilter* filter,
                            const ColorTuple* boost);

// Optional instrumentation: interval width and total of every Stage-1 coding
// event, enough to replay the exact code-length cost.
struct Stage1Trace {
    struct Event {
        uint32_t cum_lo, cum_hi, total;
    };
    std::vector<Event> events;
};

// Returns true if the color was coded, false if the escape was coded.
bool stage1_encode(RangeEncoder& enc, const Stage1View& view, ColorTuple color,
                   Stage1Trace* trace = nullptr);
std::optional<ColorTuple> stage1_decode(RangeDecoder& dec, const Stage1View& view,
                                        Stage1Trace* trace = nullptr);

}  // namespace scf

#endif
