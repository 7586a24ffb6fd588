// Deterministic synthetic image generators shared by the unit and acceptance
// suites: few-color text-like patterns, gradients, noise, and screen-content
// compositions whose chroma structure follows the luma structure.
#ifndef SCF_TESTS_SYNTHETIC_HPP
#define SCF_TESTS_SYNTHETIC_HPP

#include <algorithm>
#include <random>
#include <vector>

#include "scf/pixel_io.hpp"
#include "scf/types.hpp"

namespace testgen {

using scf::Image420;
using scf::Image444;
using scf::Plane;

inline Plane few_color_plane(int w, int h, int ncolors, std::mt19937& rng) {
    std::uniform_int_distribution<int> val(0, 255);
    std::vector<uint16_t> colors;
    for (int i = 0; i < ncolors; ++i)
        colors.push_back(uint16_t(val(rng)));

    Plane p(w, h, 8, colors[0]);
    std::uniform_int_distribution<int> cx(0, std::max(0, w - 1));
    std::uniform_int_distribution<int> cy(0, std::max(0, h - 1));
    std::uniform_int_distribution<int> len(1, std::max(1, w / 2));
    std::uniform_int_distribution<int> pick(0, ncolors - 1);
    const int strokes = std::max(4, w * h / 16);
    for (int s = 0; s < strokes; ++s) {
        const uint16_t c = colors[size_t(pick(rng))];
        int m = cy(rng), n = cx(rng);
        const int run = len(rng);
        for (int i = 0; i < run && n + i < w; ++i)
            p.set(m, n + i, c);
        if (m + 1 < h && rng() % 2)
            for (int i = 0; i < run && n + i < w; ++i)
                p.set(m + 1, n + i, c);
    }
    return p;
}

inline Plane gradient_plane(int w, int h, std::mt19937& rng) {
    std::uniform_int_distribution<int> start(0, 255);
    const int base = start(rng);
    const bool horizontal = rng() % 2;
    Plane p(w, h, 8);
    for (int m = 0; m < h; ++m)
        for (int n = 0; n < w; ++n)
            p.set(m, n, uint16_t((base + (horizontal ? n : m) * 2) % 256));
    return p;
}

inline Plane noise_plane(int w, int h, std::mt19937& rng, int maxv = 255) {
    std::uniform_int_distribution<int> val(0, maxv);
    Plane p(w, h, 8);
    for (auto& s : p.samples)
        s = uint16_t(val(rng));
    return p;
}

// Mixture kinds cycle with the seed; covers the text/gradient/noise spread.
inline Image420 random_image420(int w, int h, std::mt19937& rng) {
    auto make = [&](int kind, int pw, int ph) {
        switch (kind) {
        case 0: return few_color_plane(pw, ph, 2 + int(rng() % 6), rng);
        case 1: return gradient_plane(pw, ph, rng);
        case 2: return noise_plane(pw, ph, rng);
        default: return few_color_plane(pw, ph, 2, rng);
        }
    };
    const int kind = int(rng() % 4);
    Image420 img;
    img.y = make(kind, w, h);
    img.cb = make(kind == 3 ? 2 : kind, w / 2, h / 2);
    img.cr = make(kind == 3 ? 0 : kind, w / 2, h / 2);
    return img;
}

// Screen-content composition in YCbCr 4:4:4: a small palette where every
// color has a distinct luma, painted as rectangles, text-like runs and glyph
// stamps, then box-downsampled to 4:2:0. Chroma edges follow luma edges.
inline Image420 screen_content_420(int w, int h, int ncolors, std::mt19937& rng) {
    struct Color {
        uint16_t y, cb, cr;
    };
    std::vector<Color> pal;
    for (int i = 0; i < ncolors; ++i) {
        const uint16_t y = uint16_t(12 + i * (232 / std::max(1, ncolors - 1)));
        pal.push_back({y, uint16_t(40 + (i * 53) % 176), uint16_t(40 + (i * 97) % 176)});
    }

    Image444 img;
    img.order = scf::ChannelOrder::YCbCr;
    for (auto& p : img.planes)
        p = Plane(w, h, 8);
    auto paint = [&](int m0, int n0, int bh, int bw, const Color& c) {
        for (int m = m0; m < std::min(h, m0 + bh); ++m)
            for (int n = n0; n < std::min(w, n0 + bw); ++n) {
                img.planes[0].set(m, n, c.y);
                img.planes[1].set(m, n, c.cb);
                img.planes[2].set(m, n, c.cr);
            }
    };
    paint(0, 0, h, w, pal[0]);

    std::uniform_int_distribution<int> cx(0, w - 1), cy(0, h - 1);
    std::uniform_int_distribution<int> bw(2, std::max(2, w / 3));
    std::uniform_int_distribution<int> bh(2, std::max(2, h / 3));
    std::uniform_int_distribution<int> pick(1, ncolors - 1);
    for (int r = 0; r < 6; ++r)
        paint(cy(rng), cx(rng), bh(rng), bw(rng), pal[size_t(pick(rng))]);

    // Text-like rows: short runs of a single color separated by background.
    for (int line = 2; line + 3 < h; line += 8) {
        const Color& ink = pal[size_t(pick(rng))];
        for (int n = 1; n + 2 < w;) {
            const int run = 1 + int(rng() % 4);
            if (rng() % 3)
                paint(line, n, 3, run, ink);
            n += run + 1 + int(rng() % 3);
        }
    }
    return scf::chroma_downsample_420(img);
}

// Vertical strips with one palette color per strip; luma and chroma change at
// exactly the same (even) columns. Built directly at 4:2:0 resolution.
inline Image420 strip_fixture(int width, int height, int strips) {
    Image420 img;
    img.y = Plane(width, height, 8);
    img.cb = Plane(width / 2, height / 2, 8);
    img.cr = Plane(width / 2, height / 2, 8);
    const int cw = width / 2;
    for (int m = 0; m < height; ++m)
        for (int n = 0; n < width; ++n) {
            const int strip = std::min((n / 2) * strips / cw, strips - 1);
            img.y.set(m, n, uint16_t(20 + strip * 200 / std::max(1, strips - 1)));
        }
    for (int m = 0; m < height / 2; ++m)
        for (int n = 0; n < cw; ++n) {
            const int strip = std::min(n * strips / cw, strips - 1);
            img.cb.set(m, n, uint16_t(60 + (strip * 31) % 130));
            img.cr.set(m, n, uint16_t(60 + (strip * 67) % 130));
        }
    return img;
}

}  // namespace testgen

#endif
