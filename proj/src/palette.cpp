#include "scf/palette.hpp"

#include <algorithm>
#include <cstdlib>

namespace scf {

namespace {

ColorTuple causal_neighbor(const TupleBuffer& buf, int m, int n, int dm, int dn) {
    if (buf.in_bounds(m + dm, n + dn))
        return buf.at(m + dm, n + dn);
    if (buf.in_bounds(m, n - 1))
        return buf.at(m, n - 1);
    if (buf.in_bounds(m - 1, n))
        return buf.at(m - 1, n);
    return ColorTuple{};
}

int median3(int a, int b, int c) {
    return std::max(std::min(a, b), std::min(std::max(a, b), c));
}

}  // namespace

Prediction map_predict(const TupleBuffer& buf, int m, int n) {
    const ColorTuple a = causal_neighbor(buf, m, n, 0, -1);
    const ColorTuple b = causal_neighbor(buf, m, n, -1, 0);
    const ColorTuple c = causal_neighbor(buf, m, n, -1, -1);
    const int maxval = (1 << buf.bitdepth()) - 1;

    ColorTuple pred;
    for (int i = 0; i < buf.arity(); ++i) {
        const int av = a.comp(i), bv = b.comp(i), cv = c.comp(i);
        const int med = median3(av, bv, av + bv - cv);
        pred.set_comp(i, uint8_t(std::clamp(med, 0, maxval)));
    }
    return {pred, PredictionSource::Map};
}

Prediction lmap_predict(const TupleBuffer& chroma, const Plane& luma_q2, int m, int n) {
    const uint16_t here = luma_q2.at(m, n);
    if (n > 0 && here == luma_q2.at(m, n - 1))
        return {chroma.at(m, n - 1), PredictionSource::LmapLeft};
    if (m > 0 && here == luma_q2.at(m - 1, n))
        return {chroma.at(m - 1, n), PredictionSource::LmapTop};
    return map_predict(chroma, m, n);
}

void Palette::insert_new(ColorTuple color) {
    index_.emplace(color, uint32_t(entries_.size()));
    entries_.emplace_back(color, 1);
    total_ += 1;
}

void Palette::bump(ColorTuple color) {
    entries_[index_.at(color)].second += 1;
    total_ += 1;
    if (total_ > kCompactionLimit) {
        total_ = 0;
        for (auto& [c, count] : entries_) {
            count = std::max(1u, count / 2);
            total_ += count;
        }
    }
}

uint64_t Palette::state_digest() const {
    uint64_t h = 0xCBF29CE484222325ull;
    for (const auto& [c, count] : entries_) {
        h ^= c.packed();
        h *= 0x100000001B3ull;
        h ^= count;
        h *= 0x100000001B3ull;
    }
    return h;
}

SubPalettes split_palette(const Palette& palette, const Prediction& prediction,
                          const TupleFilter* filter, int arity) {
    SubPalettes subs;
    const auto& entries = palette.entries();
    for (uint32_t i = 0; i < entries.size(); ++i) {
        const ColorTuple c = entries[i].first;
        if (filter && !filter->allows(c))
            continue;
        int dist = 0;
        for (int k = 0; k < arity; ++k)
            dist = std::max(dist, std::abs(int(c.comp(k)) - int(prediction.value.comp(k))));
        (dist <= kSimilarityRadius ? subs.near : subs.far).push_back(i);
    }
    return subs;
}

namespace {

struct IndexCoding {
    std::vector<uint32_t> cum;  // cum[i] .. cum[i+1] is entry i's interval
    uint32_t total = 0;
};

IndexCoding index_intervals(const Palette& palette, const std::vector<uint32_t>& sub,
                            const ColorTuple* boost) {
    IndexCoding ic;
    ic.cum.reserve(sub.size() + 1);
    ic.cum.push_back(0);
    for (uint32_t idx : sub) {
        const auto& [color, count] = palette.entries()[idx];
        uint32_t c = count;
        if (boost && color == *boost)
            c *= 2;
        ic.cum.push_back(ic.cum.back() + c);
    }
    ic.total = ic.cum.back();
    return ic;
}

}  // namespace

bool stage2_encode(RangeEncoder& enc, Stage2Models& models, Palette& palette,
                   const SubPalettes& subs, ColorTuple color, const ColorTuple* boost) {
    const bool in_palette = palette.contains(color);
    enc.encode(models.in_palette.view(in_palette));
    models.in_palette.bump(in_palette);
    if (!in_palette)
        return false;

    auto entry_pos = [&](const std::vector<uint32_t>& sub) {
        for (uint32_t i = 0; i < sub.size(); ++i)
            if (palette.entries()[sub[i]].first == color)
                return int(i);
        return -1;
    };
    int pos = entry_pos(subs.near);
    const bool use_near = pos >= 0;
    if (!use_near) {
        pos = entry_pos(subs.far);
        if (pos < 0)
            throw ModelError("palette color filtered out at its own position");
    }

    enc.encode(models.near_far.view(use_near));
    models.near_far.bump(use_near);

    const auto& sub = use_near ? subs.near : subs.far;
    const IndexCoding ic = index_intervals(palette, sub, boost);
    enc.encode({ic.cum[pos], ic.cum[pos + 1], ic.total});

    palette.bump(color);
    return true;
}

std::optional<ColorTuple> stage2_decode(RangeDecoder& dec, Stage2Models& models,
                                        Palette& palette, const SubPalettes& subs,
                                        const ColorTuple* boost) {
    uint32_t target = dec.decode_target(models.in_palette.total());
    const bool in_palette = models.in_palette.bit_for(target);
    dec.consume(models.in_palette.view(in_palette));
    models.in_palette.bump(in_palette);
    if (!in_palette)
        return std::nullopt;

    target = dec.decode_target(models.near_far.total());
    const bool use_near = models.near_far.bit_for(target);
    dec.consume(models.near_far.view(use_near));
    models.near_far.bump(use_near);

    const auto& sub = use_near ? subs.near : subs.far;
    if (sub.empty())
        throw StreamError("stream selects an empty sub-palette");

    const IndexCoding ic = index_intervals(palette, sub, boost);
    target = dec.decode_target(ic.total);
    const auto it = std::upper_bound(ic.cum.begin(), ic.cum.end(), target);
    const int pos = int(it - ic.cum.begin()) - 1;
    dec.consume({ic.cum[pos], ic.cum[pos + 1], ic.total});

    const ColorTuple color = palette.entries()[sub[pos]].first;
    palette.bump(color);
    return color;
}

}  // namespace scf
