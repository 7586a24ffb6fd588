#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "helpers/synthetic.hpp"
#include "scf/pixel_io.hpp"

namespace fs = std::filesystem;

namespace {

struct Sandbox {
    fs::path dir;
    Sandbox() {
        dir = fs::temp_directory_path() /
              ("scf_cli_" + std::to_string(std::random_device{}()));
        fs::create_directories(dir);
    }
    ~Sandbox() { fs::remove_all(dir); }
    std::string path(const std::string& name) const { return (dir / name).string(); }
};

int run_cli(const std::string& args, std::string* out = nullptr) {
    const std::string capture = std::string(SCF420_BIN) + " " + args;
    if (!out) {
        const int rc = std::system((capture + " > /dev/null 2>&1").c_str());
        return WEXITSTATUS(rc);
    }
    const std::string tmp =
        (fs::temp_directory_path() / "scf_cli_capture.txt").string();
    const int rc = std::system((capture + " > " + tmp + " 2>&1").c_str());
    std::ifstream in(tmp);
    std::stringstream ss;
    ss << in.rdbuf();
    *out = ss.str();
    std::remove(tmp.c_str());
    return WEXITSTATUS(rc);
}

std::vector<uint8_t> file_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("encode/decode shell round trip is byte-identical") {
    Sandbox sb;
    std::mt19937 rng(131);
    const scf::Image420 img = testgen::screen_content_420(64, 64, 6, rng);
    scf::write_i420(img, sb.path("in.yuv"));

    std::string out;
    const int rc = run_cli("encode " + sb.path("in.yuv") +
                               " --width 64 --height 64 -o " + sb.path("out.scf"),
                           &out);
    REQUIRE(rc == 0);
    CHECK(out.find("bpp=") != std::string::npos);
    CHECK(out.find("crc_bytes=") != std::string::npos);

    REQUIRE(run_cli("decode " + sb.path("out.scf") + " -o " + sb.path("back.yuv")) ==
            0);
    CHECK(file_bytes(sb.path("back.yuv")) == file_bytes(sb.path("in.yuv")));
}

TEST_CASE("dimensions can come from the file name") {
    Sandbox sb;
    std::mt19937 rng(137);
    const scf::Image420 img = testgen::random_image420(16, 8, rng);
    scf::write_i420(img, sb.path("clip_16x8.yuv"));
    CHECK(run_cli("encode " + sb.path("clip_16x8.yuv") + " -o " +
                  sb.path("clip.scf")) == 0);
}

TEST_CASE("off-grid crc parameters exit with the usage code") {
    Sandbox sb;
    std::mt19937 rng(139);
    scf::write_i420(testgen::random_image420(8, 8, rng), sb.path("in.yuv"));
    CHECK(run_cli("encode " + sb.path("in.yuv") +
                  " --width 8 --height 8 --crc-partitions 3 -o " +
                  sb.path("x.scf")) == 1);
}

TEST_CASE("missing dimensions on raw input exit with the usage code") {
    Sandbox sb;
    std::mt19937 rng(149);
    scf::write_i420(testgen::random_image420(8, 8, rng), sb.path("in.yuv"));
    CHECK(run_cli("encode " + sb.path("in.yuv") + " -o " + sb.path("x.scf")) == 1);
}

TEST_CASE("corrupt streams exit with the stream code") {
    Sandbox sb;
    std::mt19937 rng(151);
    scf::write_i420(testgen::random_image420(8, 8, rng), sb.path("in.yuv"));
    REQUIRE(run_cli("encode " + sb.path("in.yuv") + " --width 8 --height 8 -o " +
                    sb.path("out.scf")) == 0);
    auto bytes = file_bytes(sb.path("out.scf"));
    bytes[bytes.size() - 2] ^= 0x10;
    std::ofstream(sb.path("bad.scf"), std::ios::binary)
        .write(reinterpret_cast<const char*>(bytes.data()),
               std::streamsize(bytes.size()));
    CHECK(run_cli("decode " + sb.path("bad.scf") + " -o " + sb.path("y.yuv")) == 3);
}

TEST_CASE("missing input files exit with the io code") {
    Sandbox sb;
    CHECK(run_cli("decode " + sb.path("nothing.scf") + " -o " + sb.path("y.yuv")) ==
          2);
}

TEST_CASE("no-crc encodes report zero crc bytes") {
    Sandbox sb;
    std::mt19937 rng(157);
    scf::write_i420(testgen::screen_content_420(32, 32, 4, rng), sb.path("in.yuv"));
    std::string out;
    REQUIRE(run_cli("encode " + sb.path("in.yuv") +
                        " --width 32 --height 32 --no-crc -o " + sb.path("o.scf"),
                    &out) == 0);
    CHECK(out.find("crc_bytes=0") != std::string::npos);
}

TEST_CASE("info dumps the header fields") {
    Sandbox sb;
    std::mt19937 rng(163);
    scf::write_i420(testgen::random_image420(16, 16, rng), sb.path("in.yuv"));
    REQUIRE(run_cli("encode " + sb.path("in.yuv") + " --width 16 --height 16 -o " +
                    sb.path("o.scf")) == 0);
    std::string out;
    REQUIRE(run_cli("info " + sb.path("o.scf"), &out) == 0);
    CHECK(out.find("kind=420") != std::string::npos);
    CHECK(out.find("width=16") != std::string::npos);
    CHECK(out.find("crc_partitions=64") != std::string::npos);
    CHECK(out.find("chunk[3] role=cbcr") != std::string::npos);
}

TEST_CASE("ppm inputs are converted, encoded and decodable") {
    Sandbox sb;
    std::mt19937 rng(167);
    scf::Image444 rgb;
    rgb.order = scf::ChannelOrder::RGB;
    for (auto& p : rgb.planes)
        p = testgen::few_color_plane(24, 16, 4, rng);
    scf::write_ppm(rgb, sb.path("in.ppm"));

    REQUIRE(run_cli("encode " + sb.path("in.ppm") + " -o " + sb.path("o.scf")) == 0);
    REQUIRE(run_cli("decode " + sb.path("o.scf") + " -o " + sb.path("back.yuv")) ==
            0);
    // The decoded raw equals the converted/downsampled source.
    const scf::Image420 expect =
        scf::chroma_downsample_420(scf::rgb_to_ycbcr709(rgb));
    const scf::Image420 got = scf::read_i420(sb.path("back.yuv"), 24, 16);
    CHECK(got == expect);
}

TEST_CASE("444 encodes round trip through the cli") {
    Sandbox sb;
    std::mt19937 rng(173);
    scf::Image444 rgb;
    rgb.order = scf::ChannelOrder::RGB;
    for (auto& p : rgb.planes)
        p = testgen::few_color_plane(12, 12, 3, rng);
    scf::write_ppm(rgb, sb.path("in.ppm"));

    REQUIRE(run_cli("encode " + sb.path("in.ppm") + " --format 444 -o " +
                    sb.path("o.scf")) == 0);
    REQUIRE(run_cli("decode " + sb.path("o.scf") + " -o " + sb.path("back.ppm")) ==
            0);
    CHECK(scf::read_ppm(sb.path("back.ppm")) == rgb);
}

TEST_CASE("analyze and ablate run over a small corpus") {
    Sandbox sb;
    std::mt19937 rng(179);
    for (int i = 0; i < 2; ++i) {
        scf::Image444 rgb;
        rgb.order = scf::ChannelOrder::RGB;
        for (auto& p : rgb.planes)
            p = testgen::few_color_plane(32, 32, 5, rng);
        scf::write_ppm(rgb, sb.path("img" + std::to_string(i) + ".ppm"));
    }

    std::string out;
    REQUIRE(run_cli("analyze " + sb.path("img0.ppm") + " --csv " +
                        sb.path("stats.csv"),
                    &out) == 0);
    CHECK(out.find("nmi(Y,Cb)=") != std::string::npos);
    CHECK(fs::exists(sb.path("stats.csv")));

    REQUIRE(run_cli("ablate " + sb.dir.string() + " --csv " + sb.path("ab.csv"),
                    &out) == 0);
    CHECK(out.find("bpp_full") != std::string::npos);
    CHECK(out.find("percent") != std::string::npos);
    CHECK(fs::exists(sb.path("ab.csv")));
}
