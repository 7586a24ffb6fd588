// scf420: encode, decode, analyze, ablate and inspect SCF 4:2:0 streams.
#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <regex>

#include "scf/analysis.hpp"
#include "scf/codec.hpp"
#include "scf/pixel_io.hpp"

namespace fs = std::filesystem;

namespace {

std::vector<uint8_t> slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw scf::IoError("cannot open " + path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void spit(const std::string& path, const std::vector<uint8_t>& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw scf::IoError("cannot create " + path);
    out.write(reinterpret_cast<const char*>(bytes.data()),
              std::streamsize(bytes.size()));
    if (!out)
        throw scf::IoError("write failure on " + path);
}

std::string lower_ext(const std::string& path) {
    std::string ext = fs::path(path).extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return char(std::tolower(c)); });
    return ext;
}

// Raw planar files carry no dimensions; accept explicit flags or a
// name_WxH.yuv convention.
bool dims_from_name(const std::string& path, int& w, int& h) {
    static const std::regex re(R"((\d+)x(\d+))");
    std::smatch m;
    const std::string stem = fs::path(path).stem().string();
    if (std::regex_search(stem, m, re)) {
        w = std::stoi(m[1]);
        h = std::stoi(m[2]);
        return true;
    }
    return false;
}

scf::Image420 load_420(const std::string& path, int width, int height) {
    const std::string ext = lower_ext(path);
    if (ext == ".ppm")
        return scf::chroma_downsample_420(scf::rgb_to_ycbcr709(scf::read_ppm(path)));
    if (ext == ".pgm") {
        scf::Plane y = scf::read_pgm(path);
        if (y.width % 2 != 0 || y.height % 2 != 0)
            throw scf::FormatError(path + ": odd dimensions");
        scf::Image420 img;
        img.y = std::move(y);
        img.cb = scf::Plane(img.y.width / 2, img.y.height / 2, 8, 128);
        img.cr = scf::Plane(img.y.width / 2, img.y.height / 2, 8, 128);
        return img;
    }
    if (width <= 0 || height <= 0) {
        if (!dims_from_name(path, width, height))
            throw scf::UsageError(path + ": raw input needs --width and --height");
    }
    return scf::read_i420(path, width, height);
}

struct ChunkBreakdown {
    size_t header = 0, y = 0, cbcr = 0, crc = 0;
};

ChunkBreakdown breakdown(const std::vector<uint8_t>& stream) {
    const scf::StreamInfo info = scf::inspect(stream);
    ChunkBreakdown b;
    b.header = info.header_bytes;
    for (size_t i = 0; i < info.chunk_roles.size(); ++i) {
        const size_t size = info.header.chunk_sizes[i];
        if (info.chunk_roles[i] == "y")
            b.y += size;
        else if (info.chunk_roles[i] == "cbcr" || info.chunk_roles[i] == "planes")
            b.cbcr += size;
        else
            b.crc += size;
    }
    return b;
}

int run(int argc, char** argv) {
    CLI::App app{"SCF 4:2:0 lossless screen content codec"};
    app.require_subcommand(1);

    // encode
    std::string in_path, out_path;
    int width = 0, height = 0;
    bool no_lmap = false, no_crc = false, no_boost = false;
    std::string format = "420", colorspace = "ycbcr";
    scf::CrcParams crc_params;

    CLI::App* enc = app.add_subcommand("encode", "encode an image to a .scf stream");
    enc->add_option("input", in_path, "input image (.ppm/.pgm/raw planar)")->required();
    enc->add_option("-o,--output", out_path, "output stream path")->required();
    enc->add_option("--width", width, "raw input width");
    enc->add_option("--height", height, "raw input height");
    enc->add_option("--format", format, "420 (default) or 444")
        ->check(CLI::IsMember({"420", "444"}));
    enc->add_option("--colorspace", colorspace, "raw 4:4:4 colorspace tag")
        ->check(CLI::IsMember({"rgb", "ycbcr"}));
    enc->add_flag("--no-lmap", no_lmap, "disable luma-guided chroma prediction");
    enc->add_flag("--no-crc", no_crc, "disable chroma range coding");
    enc->add_flag("--no-boost", no_boost, "disable predicted-color count doubling");
    enc->add_option("--crc-blocks", crc_params.blocks, "blocks per axis (1,2,4)");
    enc->add_option("--crc-partitions", crc_params.partitions,
                    "chroma partitions (pow2 in [4,128])");
    enc->add_option("--crc-scale", crc_params.luma_scale,
                    "luma precision scaling (pow2 in [2,128])");

    // decode
    std::string dec_in, dec_out;
    CLI::App* dec = app.add_subcommand("decode", "decode a .scf stream");
    dec->add_option("input", dec_in, "input stream")->required();
    dec->add_option("-o,--output", dec_out,
                    "output image (.yuv raw; .ppm for 4:4:4 RGB streams)")
        ->required();

    // info
    std::string info_in;
    CLI::App* info_cmd = app.add_subcommand("info", "dump stream header");
    info_cmd->add_option("input", info_in, "input stream")->required();

    // analyze
    std::vector<std::string> analyze_inputs;
    std::string analyze_csv;
    int an_width = 0, an_height = 0;
    CLI::App* an = app.add_subcommand(
        "analyze", "channel dependency and prediction statistics");
    an->add_option("inputs", analyze_inputs, "images (.ppm or raw with WxH in name)")
        ->required();
    an->add_option("--csv", analyze_csv, "write per-image CSV here");
    an->add_option("--width", an_width, "raw input width");
    an->add_option("--height", an_height, "raw input height");

    // ablate
    std::string ablate_dir, ablate_csv_path;
    scf::CrcParams ablate_params;
    CLI::App* ab = app.add_subcommand("ablate", "full / no-CRC / no-CRC-no-LMAP sweep");
    ab->add_option("corpus", ablate_dir, "directory of images")->required();
    ab->add_option("--csv", ablate_csv_path, "write CSV here");
    ab->add_option("--crc-blocks", ablate_params.blocks, "blocks per axis (1,2,4)");
    ab->add_option("--crc-partitions", ablate_params.partitions,
                   "chroma partitions (pow2 in [4,128])");
    ab->add_option("--crc-scale", ablate_params.luma_scale,
                   "luma precision scaling (pow2 in [2,128])");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    if (enc->parsed()) {
        crc_params.validate();
        if (format == "444") {
            scf::Image444 img;
            if (lower_ext(in_path) == ".ppm")
                img = scf::read_ppm(in_path);
            else {
                if (width <= 0 || height <= 0)
                    throw scf::UsageError("raw 4:4:4 input needs --width and --height");
                img = scf::read_planar444(in_path, width, height,
                                          colorspace == "rgb"
                                              ? scf::ChannelOrder::RGB
                                              : scf::ChannelOrder::YCbCr);
            }
            const auto stream = scf::encode444(img);
            spit(out_path, stream);
            std::cout << "format=444 total_bytes=" << stream.size() << " bpp="
                      << scf::bits_per_pixel(stream.size(),
                                             uint32_t(img.planes[0].width),
                                             uint32_t(img.planes[0].height))
                      << "\n";
            return 0;
        }
        const scf::Image420 img = load_420(in_path, width, height);
        scf::EncoderConfig config{!no_lmap, !no_crc, !no_boost, crc_params};
        const auto stream = scf::encode420(img, config);
        spit(out_path, stream);
        const ChunkBreakdown b = breakdown(stream);
        std::cout << "total_bytes=" << stream.size() << " bpp="
                  << scf::bits_per_pixel(stream.size(), uint32_t(img.y.width),
                                         uint32_t(img.y.height))
                  << " header_bytes=" << b.header << " y_bytes=" << b.y
                  << " cbcr_bytes=" << b.cbcr << " crc_bytes=" << b.crc << "\n";
        return 0;
    }

    if (dec->parsed()) {
        const auto stream = slurp(dec_in);
        const scf::StreamInfo info = scf::inspect(stream);
        if (info.header.kind == scf::StreamKind::YCbCr420) {
            const scf::Image420 img = scf::decode420(stream);
            scf::write_i420(img, dec_out);
        } else {
            const scf::Image444 img = scf::decode444(stream);
            if (lower_ext(dec_out) == ".ppm")
                scf::write_ppm(img, dec_out);
            else
                scf::write_planar444(img, dec_out);
        }
        std::cout << "decoded " << info.header.width << "x" << info.header.height
                  << " -> " << dec_out << "\n";
        return 0;
    }

    if (info_cmd->parsed()) {
        const auto stream = slurp(info_in);
        const scf::StreamInfo info = scf::inspect(stream);
        const auto& h = info.header;
        std::cout << "kind=" << (h.kind == scf::StreamKind::YCbCr420 ? "420" : "444")
                  << " order=" << (h.order == scf::ChannelOrder::RGB ? "rgb" : "ycbcr")
                  << " width=" << h.width << " height=" << h.height
                  << " bitdepth=" << int(h.bitdepth) << "\n"
                  << "lmap=" << h.lmap << " crc=" << h.crc << " boost=" << h.boost
                  << " crc_blocks=" << h.crc_params.blocks
                  << " crc_partitions=" << h.crc_params.partitions
                  << " crc_scale=" << h.crc_params.luma_scale << " y_max=" << h.y_max
                  << "\n"
                  << "header_bytes=" << info.header_bytes
                  << " payload_bytes=" << info.payload_bytes << " checksum=0x"
                  << std::hex << h.checksum << std::dec << "\n";
        for (size_t i = 0; i < info.chunk_roles.size(); ++i)
            std::cout << "chunk[" << i << "] role=" << info.chunk_roles[i]
                      << " bytes=" << h.chunk_sizes[i] << "\n";
        return 0;
    }

    if (an->parsed()) {
        std::ostringstream csv;
        csv << "image,nmi_r_g,nmi_r_b,nmi_g_b,nmi_y_cb,nmi_y_cr,nmi_cb_cr,"
               "map_mae,map_match,lmap_mae,lmap_match\n";
        csv.setf(std::ios::fixed);
        csv.precision(6);
        for (const std::string& path : analyze_inputs) {
            // RGB channel dependencies when the source carries them.
            std::string rgb_cell = ",,";
            if (lower_ext(path) == ".ppm") {
                const scf::Image444 rgb = scf::read_ppm(path);
                const double r_g = scf::nmi(rgb.planes[0], rgb.planes[1]);
                const double r_b = scf::nmi(rgb.planes[0], rgb.planes[2]);
                const double g_b = scf::nmi(rgb.planes[1], rgb.planes[2]);
                std::cout << path << ": nmi(R,G)=" << r_g << " nmi(R,B)=" << r_b
                          << " nmi(G,B)=" << g_b << "\n";
                std::ostringstream cell;
                cell.setf(std::ios::fixed);
                cell.precision(6);
                cell << r_g << "," << r_b << "," << g_b;
                rgb_cell = cell.str();
            }

            const scf::Image420 img = load_420(path, an_width, an_height);
            const scf::Plane cb_up =
                scf::upsample_nn(img.cb, img.y.width, img.y.height);
            const scf::Plane cr_up =
                scf::upsample_nn(img.cr, img.y.width, img.y.height);
            const double y_cb = scf::nmi(img.y, cb_up);
            const double y_cr = scf::nmi(img.y, cr_up);
            const double cb_cr = scf::nmi(img.cb, img.cr);
            const auto map = scf::prediction_stats(img, scf::Predictor::Map);
            const auto lmap = scf::prediction_stats(img, scf::Predictor::Lmap);
            std::cout << path << ": nmi(Y,Cb)=" << y_cb << " nmi(Y,Cr)=" << y_cr
                      << " nmi(Cb,Cr)=" << cb_cr << "\n  MAP  mae=" << map.mae
                      << " match=" << 100.0 * map.match_ratio << "%"
                      << "\n  LMAP mae=" << lmap.mae
                      << " match=" << 100.0 * lmap.match_ratio << "% (at "
                      << lmap.fired << " fired positions)\n";
            csv << fs::path(path).filename().string() << "," << rgb_cell << ","
                << y_cb << "," << y_cr << "," << cb_cr << "," << map.mae << ","
                << map.match_ratio << "," << lmap.mae << "," << lmap.match_ratio
                << "\n";
        }
        if (!analyze_csv.empty()) {
            std::ofstream out(analyze_csv, std::ios::trunc);
            if (!out)
                throw scf::IoError("cannot create " + analyze_csv);
            out << csv.str();
        }
        return 0;
    }

    if (ab->parsed()) {
        ablate_params.validate();
        std::vector<std::pair<std::string, scf::Image420>> corpus;
        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(ablate_dir)) {
            const std::string ext = lower_ext(entry.path().string());
            if (ext == ".ppm" || ext == ".pgm" || ext == ".yuv")
                files.push_back(entry.path());
        }
        std::sort(files.begin(), files.end());
        for (const auto& path : files)
            corpus.emplace_back(path.filename().string(),
                                load_420(path.string(), 0, 0));
        if (corpus.empty())
            throw scf::UsageError("no .ppm/.pgm/.yuv images in " + ablate_dir);

        const auto report =
            scf::run_ablation(corpus, scf::ablation_variants(ablate_params));
        const std::string csv = scf::ablation_csv(report);
        std::cout << csv;
        if (!ablate_csv_path.empty()) {
            std::ofstream out(ablate_csv_path, std::ios::trunc);
            if (!out)
                throw scf::IoError("cannot create " + ablate_csv_path);
            out << csv;
        }
        return 0;
    }

    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const scf::UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const scf::StreamError& e) {
        std::cerr << "stream error: " << e.what() << "\n";
        return 3;
    } catch (const scf::ContainerError& e) {
        std::cerr << "container error: " << e.what() << "\n";
        return 3;
    } catch (const scf::ModelError& e) {
        std::cerr << "model error: " << e.what() << "\n";
        return 3;
    } catch (const scf::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
