// Core sample containers and the packed color tuple shared by all coding stages.
#ifndef SCF_TYPES_HPP
#define SCF_TYPES_HPP

#include <array>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace scf {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad caller input: invalid flags, wrong colorspace tag, parameter off-grid.
struct UsageError : Error {
    using Error::Error;
};

// Input data malformed: file size mismatch, odd dimensions, bad PPM magic.
struct FormatError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

// Arithmetic-coded payload truncated or inconsistent with the model state.
struct StreamError : Error {
    using Error::Error;
};

// Container-level damage: bad magic, version, checksum, chunk accounting.
struct ContainerError : Error {
    using Error::Error;
};

// Internal model invariant broken (zero-width interval, total overflow).
struct ModelError : Error {
    using Error::Error;
};

// A color of 1, 2 or 3 components packed into one word: component i lives in
// byte i. The arity is a property of the surrounding pipeline, not the tuple.
class ColorTuple {
public:
    constexpr ColorTuple() = default;

    static constexpr ColorTuple mono(uint8_t c0) { return ColorTuple(c0); }
    static constexpr ColorTuple pair(uint8_t c0, uint8_t c1) {
        return ColorTuple(uint32_t(c0) | uint32_t(c1) << 8);
    }
    static constexpr ColorTuple triple(uint8_t c0, uint8_t c1, uint8_t c2) {
        return ColorTuple(uint32_t(c0) | uint32_t(c1) << 8 | uint32_t(c2) << 16);
    }

    constexpr uint8_t comp(int i) const { return uint8_t(bits_ >> (8 * i)); }
    constexpr void set_comp(int i, uint8_t v) {
        bits_ = (bits_ & ~(0xFFu << (8 * i))) | uint32_t(v) << (8 * i);
    }
    constexpr uint32_t packed() const { return bits_; }

    friend constexpr auto operator<=>(const ColorTuple&, const ColorTuple&) = default;

private:
    explicit constexpr ColorTuple(uint32_t bits) : bits_(bits) {}
    uint32_t bits_ = 0;
};

struct ColorTupleHash {
    size_t operator()(ColorTuple t) const {
        uint64_t x = t.packed();
        x *= 0x9E3779B97F4A7C15ull;
        return size_t(x ^ (x >> 31));
    }
};

// One rectangular sample grid. Samples are stored in a 16-bit container so the
// same type can hold quantized luma maps (values up to 510 at s=2) and binary
// range bitmaps (bitdepth 1); image planes use bitdepth 8 in v1.
struct Plane {
    int width = 0;
    int height = 0;
    int bitdepth = 8;
    std::vector<uint16_t> samples;

    Plane() = default;
    Plane(int w, int h, int depth = 8, uint16_t fill = 0)
        : width(w), height(h), bitdepth(depth), samples(size_t(w) * size_t(h), fill) {}

    uint16_t at(int row, int col) const { return samples[size_t(row) * width + col]; }
    void set(int row, int col, uint16_t v) { samples[size_t(row) * width + col] = v; }

    size_t sample_count() const { return samples.size(); }
    uint16_t max_value() const { return uint16_t((1u << bitdepth) - 1); }

    bool operator==(const Plane&) const = default;
};

struct Image420 {
    Plane y;
    Plane cb;
    Plane cr;

    bool operator==(const Image420&) const = default;
};

enum class ChannelOrder : uint8_t { RGB = 0, YCbCr = 1 };

struct Image444 {
    std::array<Plane, 3> planes;
    ChannelOrder order = ChannelOrder::RGB;

    bool operator==(const Image444&) const = default;
};

// Throws FormatError unless the 4:2:0 geometry invariants hold.
void validate(const Image420& img);
void validate(const Image444& img);

}  // namespace scf

#endif
