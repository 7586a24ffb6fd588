#include "scf/context_model.hpp"

#include <algorithm>

namespace scf {

TupleBuffer TupleBuffer::interleave(const std::vector<const Plane*>& planes) {
    const int arity = int(planes.size());
    const Plane& p0 = *planes[0];
    TupleBuffer buf(p0.width, p0.height, arity, p0.bitdepth);
    for (int c = 0; c < arity; ++c) {
        const Plane& p = *planes[c];
        if (p.width != p0.width || p.height != p0.height || p.bitdepth != p0.bitdepth)
            throw FormatError("plane set members must share geometry");
        for (int m = 0; m < p.height; ++m)
            for (int n = 0; n < p.width; ++n) {
                ColorTuple t = buf.at(m, n);
                t.set_comp(c, uint8_t(p.at(m, n)));
                buf.set(m, n, t);
            }
    }
    return buf;
}

std::vector<Plane> TupleBuffer::split() const {
    std::vector<Plane> planes(arity_, Plane(width_, height_, bitdepth_));
    for (int c = 0; c < arity_; ++c)
        for (int m = 0; m < height_; ++m)
            for (int n = 0; n < width_; ++n)
                planes[c].set(m, n, at(m, n).comp(c));
    return planes;
}

PatternKey extract_pattern(const TupleBuffer& buf, int m, int n) {
    ColorTuple fallback;
    if (buf.in_bounds(m, n - 1))
        fallback = buf.at(m, n - 1);
    else if (buf.in_bounds(m - 1, n))
        fallback = buf.at(m - 1, n);

    auto neighbor = [&](int dm, int dn) {
        return buf.in_bounds(m + dm, n + dn) ? buf.at(m + dm, n + dn) : fallback;
    };
    return PatternKey{{
        neighbor(0, -1),   // A
        neighbor(-1, 0),   // B
        neighbor(-1, -1),  // C
        neighbor(-1, 1),   // D
        neighbor(0, -2),   // E
        neighbor(-2, 0),   // F
    }};
}

void ContextStore::accumulate(MergedHistogram& out, uint32_t entry_index) const {
    const Entry& e = entries_[entry_index];
    for (const auto& [color, count] : e.counts) {
        auto it = std::find_if(out.counts.begin(), out.counts.end(),
                               [&](const auto& kv) { return kv.first == color; });
        if (it == out.counts.end())
            out.counts.emplace_back(color, count);
        else
            it->second += count;
    }
    out.escape += e.escape;
    out.total += e.total;
}

MergedHistogram ContextStore::merge(const PatternKey& key) const {
    MergedHistogram merged;
    merged.escape = 0;
    merged.total = 0;

    if (auto it = exact_.find(key); it != exact_.end())
        accumulate(merged, it->second);

    if (merged.total < kTierThreshold) {
        if (auto it = prefix4_.find(prefix4_of(key)); it != prefix4_.end()) {
            merged = MergedHistogram{{}, 0, 0};
            for (uint32_t idx : it->second)
                accumulate(merged, idx);
        }
    }
    if (merged.total < kTierThreshold) {
        if (auto it = prefix2_.find(prefix2_of(key)); it != prefix2_.end()) {
            merged = MergedHistogram{{}, 0, 0};
            for (uint32_t idx : it->second)
                accumulate(merged, idx);
        }
    }

    if (merged.total == 0) {
        merged.escape = 1;
        merged.total = 1;
    }
    return merged;
}

void ContextStore::update(const PatternKey& key, ColorTuple color, bool was_escape) {
    uint32_t index;
    if (auto it = exact_.find(key); it != exact_.end()) {
        index = it->second;
    } else {
        index = uint32_t(entries_.size());
        entries_.emplace_back();
        keys_.push_back(key);
        exact_.emplace(key, index);
        prefix4_[prefix4_of(key)].push_back(index);
        prefix2_[prefix2_of(key)].push_back(index);
    }

    Entry& e = entries_[index];
    auto it = std::find_if(e.counts.begin(), e.counts.end(),
                           [&](const auto& kv) { return kv.first == color; });
    if (it == e.counts.end()) {
        e.counts.emplace_back(color, 1);
        e.total += 1;
    } else {
        it->second += 1;
        e.total += 1;
    }
    if (was_escape) {
        e.escape += 1;
        e.total += 1;
    }

    if (e.total > kCompactionLimit) {
        uint64_t total = 0;
        for (auto& [c, count] : e.counts) {
            count = std::max(1u, count / 2);
            total += count;
        }
        e.escape = std::max(1u, e.escape / 2);
        e.total = total + e.escape;
    }
}

uint64_t ContextStore::state_digest() const {
    uint64_t h = 0xCBF29CE484222325ull;
    auto mix = [&](uint64_t v) {
        h ^= v;
        h *= 0x100000001B3ull;
    };
    for (size_t i = 0; i < entries_.size(); ++i) {
        for (ColorTuple t : keys_[i].n)
            mix(t.packed());
        for (const auto& [c, count] : entries_[i].counts) {
            mix(c.packed());
            mix(count);
        }
        mix(entries_[i].escape);
    }
    return h;
}

Stage1View make_stage1_view(const MergedHistogram& merged, const TupleFilter* filter,
                            const ColorTuple* boost) {
    Stage1View view;
    view.counts.reserve(merged.counts.size());
    uint64_t total = 0;
    for (const auto& [color, count] : merged.counts) {
        if (filter && !filter->allows(color))
            continue;
        uint64_t c = count;
        if (boost && color == *boost)
            c *= 2;
        view.counts.emplace_back(color, uint32_t(c));
        total += c;
    }
    view.escape = std::max(1u, merged.escape);
    total += view.escape;

    // Oversized merges (many compaction-capped entries in one tier class) are
    // rescaled so the coder's precision bound holds; both sides do this from
    // the same state.
    while (total > kMaxModelTotal) {
        const uint64_t before = total;
        total = 0;
        for (auto& [c, count] : view.counts) {
            count = std::max(1u, count / 2);
            total += count;
        }
        view.escape = std::max(1u, view.escape / 2);
        total += view.escape;
        if (total == before)
            throw ModelError("merged histogram has too many distinct colors");
    }
    view.total = uint32_t(total);
    return view;
}

namespace {

void record(Stage1Trace* trace, uint32_t lo, uint32_t hi, uint32_t total) {
    if (trace)
        trace->events.push_back({lo, hi, total});
}

}  // namespace

bool stage1_encode(RangeEncoder& enc, const Stage1View& view, ColorTuple color,
                   Stage1Trace* trace) {
    uint32_t cum = 0;
    for (const auto& [c, count] : view.counts) {
        if (c == color) {
            enc.encode({cum, cum + count, view.total});
            record(trace, cum, cum + count, view.total);
            return true;
        }
        cum += count;
    }
    enc.encode({view.total - view.escape, view.total, view.total});
    record(trace, view.total - view.escape, view.total, view.total);
    return false;
}

std::optional<ColorTuple> stage1_decode(RangeDecoder& dec, const Stage1View& view,
                                        Stage1Trace* trace) {
    const uint32_t target = dec.decode_target(view.total);
    uint32_t cum = 0;
    for (const auto& [c, count] : view.counts) {
        if (target < cum + count) {
            dec.consume({cum, cum + count, view.total});
            record(trace, cum, cum + count, view.total);
            return c;
        }
        cum += count;
    }
    dec.consume({view.total - view.escape, view.total, view.total});
    record(trace, view.total - view.escape, view.total, view.total);
    return std::nullopt;
}

}  // namespace scf
