#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "helpers/synthetic.hpp"
#include "scf/pixel_io.hpp"

using namespace scf;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name) {
        path = (std::filesystem::temp_directory_path() / name).string();
    }
    ~TempFile() { std::remove(path.c_str()); }
};

void write_bytes(const std::string& path, const std::vector<uint8_t>& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out.write(reinterpret_cast<const char*>(bytes.data()),
              std::streamsize(bytes.size()));
}

}  // namespace

TEST_CASE("i420 layout maps bytes to planes in Y, Cb, Cr order") {
    TempFile f("scf_t_i420.yuv");
    write_bytes(f.path, {1, 2, 3, 4, 9, 7});
    const Image420 img = read_i420(f.path, 2, 2);
    CHECK(img.y.samples == std::vector<uint16_t>{1, 2, 3, 4});
    CHECK(img.cb.samples == std::vector<uint16_t>{9});
    CHECK(img.cr.samples == std::vector<uint16_t>{7});
}

TEST_CASE("i420 size mismatch is a format error") {
    TempFile f("scf_t_short.yuv");
    write_bytes(f.path, {1, 2, 3, 4, 9});
    CHECK_THROWS_AS(read_i420(f.path, 2, 2), FormatError);
}

TEST_CASE("i420 rejects odd dimensions") {
    TempFile f("scf_t_odd.yuv");
    write_bytes(f.path, std::vector<uint8_t>(9, 0));
    CHECK_THROWS_AS(read_i420(f.path, 3, 2), FormatError);
}

TEST_CASE("planar444 reads three channel-major planes") {
    TempFile f("scf_t_444.raw");
    std::vector<uint8_t> bytes(48);
    for (size_t i = 0; i < bytes.size(); ++i)
        bytes[i] = uint8_t(i);
    write_bytes(f.path, bytes);
    const Image444 img = read_planar444(f.path, 4, 4, ChannelOrder::RGB);
    for (int c = 0; c < 3; ++c) {
        CHECK(img.planes[size_t(c)].width == 4);
        CHECK(img.planes[size_t(c)].height == 4);
        CHECK(img.planes[size_t(c)].samples[0] == uint16_t(c * 16));
    }
}

TEST_CASE("write_i420 emits 1.5 bytes per luma pixel and round trips") {
    std::mt19937 rng(7);
    const Image420 img = testgen::random_image420(16, 16, rng);
    TempFile f("scf_t_rt.yuv");
    const size_t written = write_i420(img, f.path);
    CHECK(written == 16 * 16 * 3 / 2);
    CHECK(read_i420(f.path, 16, 16) == img);
}

TEST_CASE("write_i420 rejects empty images") {
    TempFile f("scf_t_empty.yuv");
    CHECK_THROWS_AS(write_i420(Image420{}, f.path), FormatError);
}

TEST_CASE("planar444 raw files round trip with their channel order") {
    std::mt19937 rng(19);
    Image444 img;
    img.order = ChannelOrder::YCbCr;
    for (auto& p : img.planes)
        p = testgen::noise_plane(7, 5, rng);
    TempFile f("scf_t_rt444.raw");
    const size_t written = write_planar444(img, f.path);
    CHECK(written == 7 * 5 * 3);
    CHECK(read_planar444(f.path, 7, 5, ChannelOrder::YCbCr) == img);
}

TEST_CASE("bt709 conversion hits the frozen matrix values") {
    Image444 rgb;
    rgb.order = ChannelOrder::RGB;
    const std::vector<std::array<uint16_t, 3>> in = {
        {0, 0, 0}, {255, 255, 255}, {255, 0, 0}, {0, 255, 0}, {0, 0, 255},
        {12, 200, 34}};
    // Frozen from exact rational evaluation of the full-range BT.709 matrix
    // with round-half-up and clamping; red's Cr lands on 255.5 and clamps.
    const std::vector<std::array<uint16_t, 3>> want = {
        {0, 128, 128}, {255, 128, 128}, {54, 99, 255}, {182, 30, 12},
        {18, 255, 116}, {148, 67, 42}};
    for (auto& p : rgb.planes)
        p = Plane(int(in.size()), 1, 8);
    for (size_t i = 0; i < in.size(); ++i)
        for (int c = 0; c < 3; ++c)
            rgb.planes[size_t(c)].samples[i] = in[i][size_t(c)];

    const Image444 ycc = rgb_to_ycbcr709(rgb);
    CHECK(ycc.order == ChannelOrder::YCbCr);
    for (size_t i = 0; i < want.size(); ++i)
        for (int c = 0; c < 3; ++c)
            CHECK(ycc.planes[size_t(c)].samples[i] == want[i][size_t(c)]);
}

TEST_CASE("gray pixels always map to neutral chroma") {
    Image444 rgb;
    rgb.order = ChannelOrder::RGB;
    for (auto& p : rgb.planes)
        p = Plane(256, 1, 8);
    for (int v = 0; v < 256; ++v)
        for (int c = 0; c < 3; ++c)
            rgb.planes[size_t(c)].samples[size_t(v)] = uint16_t(v);
    const Image444 ycc = rgb_to_ycbcr709(rgb);
    for (int v = 0; v < 256; ++v) {
        CHECK(ycc.planes[1].samples[size_t(v)] == 128);
        CHECK(ycc.planes[2].samples[size_t(v)] == 128);
    }
}

TEST_CASE("conversion rejects a non-RGB tag") {
    Image444 img;
    img.order = ChannelOrder::YCbCr;
    for (auto& p : img.planes)
        p = Plane(2, 2, 8);
    CHECK_THROWS_AS(rgb_to_ycbcr709(img), UsageError);
}

TEST_CASE("chroma downsampling is a round-half-up box average") {
    Image444 img;
    img.order = ChannelOrder::YCbCr;
    for (auto& p : img.planes)
        p = Plane(2, 2, 8);
    SUBCASE("constant block keeps its value") {
        for (auto& s : img.planes[1].samples)
            s = 10;
        CHECK(chroma_downsample_420(img).cb.samples[0] == 10);
    }
    SUBCASE("half rounds up") {
        img.planes[1].samples = {0, 0, 0, 2};
        CHECK(chroma_downsample_420(img).cb.samples[0] == 1);
    }
}

TEST_CASE("downsampling matches a direct 2x2 averaging oracle") {
    std::mt19937 rng(11);
    Image444 img;
    img.order = ChannelOrder::YCbCr;
    for (auto& p : img.planes)
        p = testgen::noise_plane(8, 8, rng);
    const Image420 out = chroma_downsample_420(img);
    for (int c = 1; c <= 2; ++c) {
        const Plane& src = img.planes[size_t(c)];
        const Plane& dst = c == 1 ? out.cb : out.cr;
        for (int m = 0; m < 4; ++m)
            for (int n = 0; n < 4; ++n) {
                const int sum = src.at(2 * m, 2 * n) + src.at(2 * m, 2 * n + 1) +
                                src.at(2 * m + 1, 2 * n) +
                                src.at(2 * m + 1, 2 * n + 1);
                CHECK(dst.at(m, n) == (sum + 2) / 4);
            }
    }
}

TEST_CASE("downsampling rejects odd dimensions") {
    Image444 img;
    img.order = ChannelOrder::YCbCr;
    for (auto& p : img.planes)
        p = Plane(3, 2, 8);
    CHECK_THROWS_AS(chroma_downsample_420(img), FormatError);
}

TEST_CASE("pgm and ppm round trip") {
    std::mt19937 rng(13);
    TempFile pgm("scf_t.pgm"), ppm("scf_t.ppm");

    const Plane plane = testgen::few_color_plane(9, 5, 3, rng);
    write_pgm(plane, pgm.path);
    CHECK(read_pgm(pgm.path) == plane);

    Image444 img;
    img.order = ChannelOrder::RGB;
    for (auto& p : img.planes)
        p = testgen::noise_plane(6, 4, rng);
    write_ppm(img, ppm.path);
    CHECK(read_ppm(ppm.path) == img);
}

TEST_CASE("nearest-neighbor upsampling doubles 4:2:0 chroma cleanly") {
    Plane p(2, 2, 8);
    p.samples = {1, 2, 3, 4};
    const Plane up = upsample_nn(p, 4, 4);
    CHECK(up.samples == std::vector<uint16_t>{1, 1, 2, 2, 1, 1, 2, 2, 3, 3, 4, 4,
                                              3, 3, 4, 4});
}
