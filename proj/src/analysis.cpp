#include "scf/analysis.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>
#include <unordered_map>

#include "scf/chroma_range.hpp"
#include "scf/palette.hpp"

namespace scf {

double nmi(const Plane& a, const Plane& b) {
    if (a.width != b.width || a.height != b.height)
        throw FormatError("nmi requires equal plane dimensions");

    std::unordered_map<uint32_t, uint64_t> joint;
    std::unordered_map<uint16_t, uint64_t> marg_a, marg_b;
    const size_t n = a.samples.size();
    for (size_t i = 0; i < n; ++i) {
        joint[uint32_t(a.samples[i]) << 16 | b.samples[i]] += 1;
        marg_a[a.samples[i]] += 1;
        marg_b[b.samples[i]] += 1;
    }

    auto entropy = [n](const auto& hist) {
        double h = 0.0;
        for (const auto& [v, count] : hist) {
            const double p = double(count) / double(n);
            h -= p * std::log(p);
        }
        return h / std::log(2.0);
    };
    const double ha = entropy(marg_a);
    const double hb = entropy(marg_b);
    const double hab = entropy(joint);
    if (ha + hb == 0.0)
        return 0.0;
    return 2.0 * (ha + hb - hab) / (ha + hb);
}

PredictionStats prediction_stats(const Image420& image, Predictor predictor) {
    validate(image);
    const TupleBuffer chroma = TupleBuffer::interleave({&image.cb, &image.cr});
    const Plane luma_q2 = quantize_luma(image.y, 2);

    PredictionStats stats;
    uint64_t abs_error = 0;
    uint64_t matched = 0, matched_fired = 0;
    for (int m = 0; m < chroma.height(); ++m)
        for (int n = 0; n < chroma.width(); ++n) {
            if (m == 0 && n == 0)
                continue;
            const Prediction pred = predictor == Predictor::Lmap
                                        ? lmap_predict(chroma, luma_q2, m, n)
                                        : map_predict(chroma, m, n);
            const ColorTuple actual = chroma.at(m, n);
            bool match = true;
            for (int c = 0; c < 2; ++c) {
                abs_error += uint64_t(
                    std::abs(int(actual.comp(c)) - int(pred.value.comp(c))));
                match = match && actual.comp(c) == pred.value.comp(c);
            }
            stats.positions += 1;
            if (pred.source != PredictionSource::Map) {
                stats.fired += 1;
                matched_fired += match;
            }
            matched += match;
        }

    if (stats.positions > 0)
        stats.mae = double(abs_error) / double(2 * stats.positions);
    if (predictor == Predictor::Lmap)
        stats.match_ratio =
            stats.fired > 0 ? double(matched_fired) / double(stats.fired) : 0.0;
    else
        stats.match_ratio =
            stats.positions > 0 ? double(matched) / double(stats.positions) : 0.0;
    return stats;
}

std::vector<AblationVariant> ablation_variants(CrcParams params) {
    EncoderConfig full{true, true, true, params};
    EncoderConfig no_crc{true, false, true, params};
    EncoderConfig plain{false, false, false, params};
    return {{"full", full}, {"no_crc", no_crc}, {"no_crc_no_lmap", plain}};
}

AblationReport run_ablation(const std::vector<std::pair<std::string, Image420>>& corpus,
                            const std::vector<AblationVariant>& variants) {
    AblationReport report;
    for (const auto& v : variants)
        report.variant_names.push_back(v.name);

    std::vector<double> sums(variants.size(), 0.0);
    size_t ok_count = 0;
    for (const auto& [name, image] : corpus) {
        AblationRow row;
        row.name = name;
        row.ok = true;
        try {
            for (const auto& variant : variants) {
                const auto stream = encode420(image, variant.config);
                if (decode420(stream) != image)
                    throw Error("reconstruction mismatch");
                row.bpp.push_back(bits_per_pixel(stream.size(),
                                                 uint32_t(image.y.width),
                                                 uint32_t(image.y.height)));
            }
        } catch (const Error& e) {
            row.ok = false;
            row.error = e.what();
            row.bpp.clear();
        }
        if (row.ok) {
            ++ok_count;
            for (size_t i = 0; i < variants.size(); ++i)
                sums[i] += row.bpp[i];
        }
        report.rows.push_back(std::move(row));
    }

    if (ok_count > 0) {
        for (double s : sums)
            report.mean_bpp.push_back(s / double(ok_count));
        for (double m : report.mean_bpp)
            report.percent.push_back(100.0 * m / report.mean_bpp[0]);
    }
    return report;
}

std::string ablation_csv(const AblationReport& report) {
    std::ostringstream out;
    out << "image";
    for (const auto& name : report.variant_names)
        out << ",bpp_" << name;
    out << ",status\n";
    out.setf(std::ios::fixed);
    out.precision(6);
    for (const auto& row : report.rows) {
        out << row.name;
        if (row.ok) {
            for (double b : row.bpp)
                out << "," << b;
            out << ",ok\n";
        } else {
            for (size_t i = 0; i < report.variant_names.size(); ++i)
                out << ",";
            out << "error: " << row.error << "\n";
        }
    }
    if (!report.mean_bpp.empty()) {
        out << "mean";
        for (double b : report.mean_bpp)
            out << "," << b;
        out << ",\npercent";
        for (double p : report.percent)
            out << "," << p;
        out << ",\n";
    }
    return out.str();
}

}  // namespace scf
