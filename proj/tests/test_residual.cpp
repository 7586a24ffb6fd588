#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "scf/residual.hpp"

using namespace scf;

TEST_CASE("zig-zag folding maps the stated examples") {
    CHECK(zigzag_index(100, 100, 8) == 0);
    CHECK(zigzag_index(97, 100, 8) == 5);   // error -3
    CHECK(zigzag_index(101, 100, 8) == 2);  // error +1
    CHECK(zigzag_index(99, 100, 8) == 1);   // error -1
}

TEST_CASE("modular folding is a bijection for every predictor") {
    for (int bitdepth : {1, 8}) {
        const int range = 1 << bitdepth;
        for (int pred = 0; pred < range; ++pred) {
            std::set<int> seen;
            for (int value = 0; value < range; ++value) {
                const int z = zigzag_index(value, pred, bitdepth);
                REQUIRE(z >= 0);
                REQUIRE(z < range);
                seen.insert(z);
                REQUIRE(zigzag_value(z, pred, bitdepth) == value);
            }
            REQUIRE(int(seen.size()) == range);
        }
    }
}

TEST_CASE("restricted coding follows a manually tracked model") {
    // Allowed values {0..3}, predictor 1: the alphabet shrinks to 4 indices
    // and probabilities renormalize over the surviving counts. A replica of
    // the adaptive counts supplies the ideal cost.
    ValueMask allowed;
    for (int v = 0; v < 4; ++v)
        allowed.set(size_t(v));

    ErrorHistogram hist(8);
    std::vector<uint32_t> replica(256, 1);
    std::mt19937 rng(31);

    RangeEncoder enc;
    double ideal_bits = 0.0;
    const int n = 10000;
    std::vector<int> values;
    for (int i = 0; i < n; ++i) {
        const int value = int(rng() % 4);
        values.push_back(value);

        uint64_t total = 0;
        for (int z = 0; z < 256; ++z)
            if (allowed[size_t(zigzag_value(z, 1, 8))])
                total += replica[size_t(z)];
        const int zi = zigzag_index(value, 1, 8);
        ideal_bits -= std::log2(double(replica[size_t(zi)]) / double(total));
        replica[size_t(zi)] += 1;

        hist.encode(enc, 1, value, &allowed);
    }
    const auto bytes = enc.finish();
    CHECK(double(bytes.size()) * 8.0 <= ideal_bits + 0.01 * n + 64);

    ErrorHistogram dec_hist(8);
    RangeDecoder dec(bytes);
    for (int i = 0; i < n; ++i)
        REQUIRE(dec_hist.decode(dec, 1, &allowed) == values[i]);
    CHECK(dec_hist.state_digest() == hist.state_digest());
}

TEST_CASE("restriction never excludes the true value") {
    std::mt19937 rng(37);
    for (int round = 0; round < 500; ++round) {
        const int value = int(rng() % 256);
        const int pred = int(rng() % 256);
        ValueMask allowed;
        for (int v = 0; v < 256; ++v)
            if (rng() % 3 == 0)
                allowed.set(size_t(v));
        allowed.set(size_t(value));

        ErrorHistogram enc_hist(8), dec_hist(8);
        RangeEncoder enc;
        enc_hist.encode(enc, pred, value, &allowed);
        const auto bytes = enc.finish();
        RangeDecoder dec(bytes);
        CHECK(dec_hist.decode(dec, pred, &allowed) == value);
    }
}

TEST_CASE("coding a value outside the allowed set is an internal error") {
    ValueMask allowed;
    allowed.set(7);
    ErrorHistogram hist(8);
    RangeEncoder enc;
    CHECK_THROWS_AS(hist.encode(enc, 0, 9, &allowed), ModelError);
}

TEST_CASE("bitdepth-1 histograms code the binary alphabet") {
    ErrorHistogram enc_hist(1), dec_hist(1);
    std::mt19937 rng(41);
    RangeEncoder enc;
    std::vector<int> values;
    for (int i = 0; i < 2000; ++i) {
        const int v = int(rng() % 2);
        values.push_back(v);
        enc_hist.encode(enc, i % 2, v, nullptr);
    }
    const auto bytes = enc.finish();
    RangeDecoder dec(bytes);
    for (int i = 0; i < 2000; ++i)
        REQUIRE(dec_hist.decode(dec, i % 2, nullptr) == values[i]);
}

TEST_CASE("histograms compact once the total passes 2^16") {
    ErrorHistogram hist(8);
    RangeEncoder enc;
    for (int i = 0; i < (1 << 16) + 300; ++i)
        hist.encode(enc, 0, 5, nullptr);
    CHECK(hist.total() <= (1u << 16));
    CHECK(hist.count_at(zigzag_index(5, 0, 8)) >= 1);
}
