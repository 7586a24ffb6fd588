// Planar raw / PGM / PPM readers and writers plus the dataset-preparation
// conversions: full-range BT.709 RGB->YCbCr and 2x2 box chroma downsampling.
#ifndef SCF_PIXEL_IO_HPP
#define SCF_PIXEL_IO_HPP

#include <string>

#include "scf/types.hpp"

namespace scf {

enum class RawLayout : uint8_t { I420 = 0, Planar444 = 1 };

// Raw planar files carry no metadata; dimensions come from the caller.
// I420 order is Y, Cb, Cr; Planar444 is channel-major.
Image420 read_i420(const std::string& path, int width, int height);
Image444 read_planar444(const std::string& path, int width, int height,
                        ChannelOrder order);
size_t write_i420(const Image420& img, const std::string& path);
size_t write_planar444(const Image444& img, const std::string& path);

// Binary PGM (P5) and PPM (P6), maxval 255.
Plane read_pgm(const std::string& path);
void write_pgm(const Plane& plane, const std::string& path);
Image444 read_ppm(const std::string& path);
void write_ppm(const Image444& img, const std::string& path);

// Full-range BT.709 matrix in exact integer arithmetic, round half up,
// clamped to [0,255]; Cb/Cr carry the +128 offset.
Image444 rgb_to_ycbcr709(const Image444& rgb);

// 2x2 box average with round half up. Requires even dimensions and a
// YCbCr-tagged input.
Image420 chroma_downsample_420(const Image444& ycbcr);

// Nearest-neighbor upsampling (used to align chroma with luma for statistics).
Plane upsample_nn(const Plane& src, int width, int height);

}  // namespace scf

#endif
