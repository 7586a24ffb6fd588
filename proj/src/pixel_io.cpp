#include "scf/pixel_io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>

namespace scf {

void validate(const Image420& img) {
    if (img.y.width <= 0 || img.y.height <= 0)
        throw FormatError("empty luma plane");
    if (img.y.width % 2 != 0 || img.y.height % 2 != 0)
        throw FormatError("4:2:0 requires even luma dimensions");
    const int cw = img.y.width / 2, ch = img.y.height / 2;
    for (const Plane* p : {&img.cb, &img.cr}) {
        if (p->width != cw || p->height != ch)
            throw FormatError("chroma plane is not half the luma size");
        if (p->samples.size() != size_t(cw) * ch)
            throw FormatError("chroma sample count mismatch");
    }
    if (img.y.samples.size() != size_t(img.y.width) * img.y.height)
        throw FormatError("luma sample count mismatch");
}

void validate(const Image444& img) {
    const Plane& p0 = img.planes[0];
    if (p0.width <= 0 || p0.height <= 0)
        throw FormatError("empty plane");
    for (const Plane& p : img.planes) {
        if (p.width != p0.width || p.height != p0.height || p.bitdepth != p0.bitdepth)
            throw FormatError("4:4:4 planes must share geometry");
        if (p.samples.size() != size_t(p.width) * p.height)
            throw FormatError("sample count mismatch");
    }
}

namespace {

std::vector<uint8_t> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open " + path);
    std::vector<uint8_t> data{std::istreambuf_iterator<char>(in),
                              std::istreambuf_iterator<char>()};
    if (in.bad())
        throw IoError("read failure on " + path);
    return data;
}

void write_file(const std::string& path, const uint8_t* data, size_t size) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot create " + path);
    out.write(reinterpret_cast<const char*>(data), std::streamsize(size));
    if (!out)
        throw IoError("write failure on " + path);
}

Plane take_plane(const std::vector<uint8_t>& buf, size_t& pos, int w, int h) {
    Plane p(w, h, 8);
    for (size_t i = 0; i < p.samples.size(); ++i)
        p.samples[i] = buf[pos + i];
    pos += p.samples.size();
    return p;
}

void append_plane(std::vector<uint8_t>& buf, const Plane& p) {
    for (uint16_t s : p.samples)
        buf.push_back(uint8_t(s));
}

}  // namespace

Image420 read_i420(const std::string& path, int width, int height) {
    if (width <= 0 || height <= 0 || width % 2 != 0 || height % 2 != 0)
        throw FormatError("I420 needs positive even dimensions");
    std::vector<uint8_t> buf = read_file(path);
    const size_t expect = size_t(width) * height * 3 / 2;
    if (buf.size() != expect)
        throw FormatError(path + ": size " + std::to_string(buf.size()) +
                          " != expected " + std::to_string(expect));
    size_t pos = 0;
    Image420 img;
    img.y = take_plane(buf, pos, width, height);
    img.cb = take_plane(buf, pos, width / 2, height / 2);
    img.cr = take_plane(buf, pos, width / 2, height / 2);
    return img;
}

Image444 read_planar444(const std::string& path, int width, int height,
                        ChannelOrder order) {
    if (width <= 0 || height <= 0)
        throw FormatError("planar 4:4:4 needs positive dimensions");
    std::vector<uint8_t> buf = read_file(path);
    const size_t expect = size_t(width) * height * 3;
    if (buf.size() != expect)
        throw FormatError(path + ": size " + std::to_string(buf.size()) +
                          " != expected " + std::to_string(expect));
    size_t pos = 0;
    Image444 img;
    img.order = order;
    for (Plane& p : img.planes)
        p = take_plane(buf, pos, width, height);
    return img;
}

size_t write_i420(const Image420& img, const std::string& path) {
    validate(img);
    std::vector<uint8_t> buf;
    buf.reserve(img.y.samples.size() * 3 / 2);
    append_plane(buf, img.y);
    append_plane(buf, img.cb);
    append_plane(buf, img.cr);
    write_file(path, buf.data(), buf.size());
    return buf.size();
}

size_t write_planar444(const Image444& img, const std::string& path) {
    validate(img);
    std::vector<uint8_t> buf;
    buf.reserve(img.planes[0].samples.size() * 3);
    for (const Plane& p : img.planes)
        append_plane(buf, p);
    write_file(path, buf.data(), buf.size());
    return buf.size();
}

namespace {

// Minimal netpbm header parsing: magic, whitespace/comments, three ints.
struct PnmHeader {
    int width = 0, height = 0, maxval = 0;
    size_t data_offset = 0;
};

PnmHeader parse_pnm(const std::vector<uint8_t>& buf, const char* magic,
                    const std::string& path) {
    size_t pos = 0;
    auto skip_space = [&] {
        while (pos < buf.size()) {
            if (buf[pos] == '#') {
                while (pos < buf.size() && buf[pos] != '\n')
                    ++pos;
            } else if (std::isspace(buf[pos])) {
                ++pos;
            } else {
                break;
            }
        }
    };
    auto read_int = [&] {
        skip_space();
        if (pos >= buf.size() || !std::isdigit(buf[pos]))
            throw FormatError(path + ": malformed netpbm header");
        int v = 0;
        while (pos < buf.size() && std::isdigit(buf[pos]))
            v = v * 10 + (buf[pos++] - '0');
        return v;
    };
    if (buf.size() < 2 || buf[0] != uint8_t(magic[0]) || buf[1] != uint8_t(magic[1]))
        throw FormatError(path + ": not a " + magic + " file");
    pos = 2;
    PnmHeader h;
    h.width = read_int();
    h.height = read_int();
    h.maxval = read_int();
    if (pos >= buf.size() || !std::isspace(buf[pos]))
        throw FormatError(path + ": malformed netpbm header");
    h.data_offset = pos + 1;
    if (h.maxval != 255)
        throw FormatError(path + ": only maxval 255 supported");
    if (h.width <= 0 || h.height <= 0)
        throw FormatError(path + ": bad dimensions");
    return h;
}

}  // namespace

Plane read_pgm(const std::string& path) {
    std::vector<uint8_t> buf = read_file(path);
    PnmHeader h = parse_pnm(buf, "P5", path);
    const size_t need = size_t(h.width) * h.height;
    if (buf.size() - h.data_offset != need)
        throw FormatError(path + ": PGM payload size mismatch");
    Plane p(h.width, h.height, 8);
    for (size_t i = 0; i < need; ++i)
        p.samples[i] = buf[h.data_offset + i];
    return p;
}

void write_pgm(const Plane& plane, const std::string& path) {
    if (plane.width <= 0 || plane.height <= 0)
        throw FormatError("empty plane");
    std::string header = "P5\n" + std::to_string(plane.width) + " " +
                         std::to_string(plane.height) + "\n255\n";
    std::vector<uint8_t> buf(header.begin(), header.end());
    append_plane(buf, plane);
    write_file(path, buf.data(), buf.size());
}

Image444 read_ppm(const std::string& path) {
    std::vector<uint8_t> buf = read_file(path);
    PnmHeader h = parse_pnm(buf, "P6", path);
    const size_t pixels = size_t(h.width) * h.height;
    if (buf.size() - h.data_offset != pixels * 3)
        throw FormatError(path + ": PPM payload size mismatch");
    Image444 img;
    img.order = ChannelOrder::RGB;
    for (Plane& p : img.planes)
        p = Plane(h.width, h.height, 8);
    for (size_t i = 0; i < pixels; ++i)
        for (int c = 0; c < 3; ++c)
            img.planes[c].samples[i] = buf[h.data_offset + i * 3 + c];
    return img;
}

void write_ppm(const Image444& img, const std::string& path) {
    validate(img);
    if (img.order != ChannelOrder::RGB)
        throw UsageError("write_ppm expects an RGB-tagged image");
    const Plane& r = img.planes[0];
    std::string header = "P6\n" + std::to_string(r.width) + " " +
                         std::to_string(r.height) + "\n255\n";
    std::vector<uint8_t> buf(header.begin(), header.end());
    const size_t pixels = r.samples.size();
    for (size_t i = 0; i < pixels; ++i)
        for (int c = 0; c < 3; ++c)
            buf.push_back(uint8_t(img.planes[c].samples[i]));
    write_file(path, buf.data(), buf.size());
}

namespace {

// Floor division for possibly negative numerators.
int64_t floor_div(int64_t n, int64_t d) {
    int64_t q = n / d;
    if ((n % d != 0) && ((n < 0) != (d < 0)))
        --q;
    return q;
}

// round(n/d) half up == floor((2n + d) / 2d), exact in integers.
int round_half_up(int64_t num, int64_t den) {
    return int(floor_div(2 * num + den, 2 * den));
}

uint16_t clamp255(int v) { return uint16_t(std::clamp(v, 0, 255)); }

}  // namespace

Image444 rgb_to_ycbcr709(const Image444& rgb) {
    validate(rgb);
    if (rgb.order != ChannelOrder::RGB)
        throw UsageError("rgb_to_ycbcr709 expects an RGB-tagged image");
    if (rgb.planes[0].bitdepth != 8)
        throw UsageError("only 8-bit input supported");

    Image444 out;
    out.order = ChannelOrder::YCbCr;
    for (Plane& p : out.planes)
        p = Plane(rgb.planes[0].width, rgb.planes[0].height, 8);

    // Kr=0.2126, Kg=0.7152, Kb=0.0722 scaled by 10000; the chroma rows are the
    // same coefficients folded with the 1/(2(1-Kb)) and 1/(2(1-Kr)) divisors.
    const size_t n = rgb.planes[0].samples.size();
    for (size_t i = 0; i < n; ++i) {
        const int64_t r = rgb.planes[0].samples[i];
        const int64_t g = rgb.planes[1].samples[i];
        const int64_t b = rgb.planes[2].samples[i];
        const int64_t ynum = 2126 * r + 7152 * g + 722 * b;
        out.planes[0].samples[i] = clamp255(round_half_up(ynum, 10000));
        out.planes[1].samples[i] =
            clamp255(128 + round_half_up(-2126 * r - 7152 * g + 9278 * b, 18556));
        out.planes[2].samples[i] =
            clamp255(128 + round_half_up(7874 * r - 7152 * g - 722 * b, 15748));
    }
    return out;
}

Image420 chroma_downsample_420(const Image444& ycbcr) {
    validate(ycbcr);
    if (ycbcr.order != ChannelOrder::YCbCr)
        throw UsageError("chroma_downsample_420 expects a YCbCr-tagged image");
    const int w = ycbcr.planes[0].width, h = ycbcr.planes[0].height;
    if (w % 2 != 0 || h % 2 != 0)
        throw FormatError("downsampling requires even dimensions");

    Image420 out;
    out.y = ycbcr.planes[0];
    for (int c = 1; c <= 2; ++c) {
        const Plane& src = ycbcr.planes[c];
        Plane dst(w / 2, h / 2, 8);
        for (int m = 0; m < h / 2; ++m)
            for (int n = 0; n < w / 2; ++n) {
                const int sum = src.at(2 * m, 2 * n) + src.at(2 * m, 2 * n + 1) +
                                src.at(2 * m + 1, 2 * n) + src.at(2 * m + 1, 2 * n + 1);
                dst.set(m, n, uint16_t((sum + 2) / 4));
            }
        (c == 1 ? out.cb : out.cr) = dst;
    }
    return out;
}

Plane upsample_nn(const Plane& src, int width, int height) {
    if (src.width <= 0 || src.height <= 0)
        throw FormatError("empty plane");
    Plane dst(width, height, src.bitdepth);
    for (int m = 0; m < height; ++m) {
        const int sm = std::min(m * src.height / height, src.height - 1);
        for (int n = 0; n < width; ++n) {
            const int sn = std::min(n * src.width / width, src.width - 1);
            dst.set(m, n, src.at(sm, sn));
        }
    }
    return dst;
}

}  // namespace scf
