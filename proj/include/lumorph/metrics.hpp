#pragma once

#include <array>
#include <cstdint>

#include "lumorph/image.hpp"

namespace lumorph {

/// Weber contrast of an object against its surround.
struct ContrastMeasurement {
    std::uint8_t l_max = 0;
    std::uint8_t l_min = 0;
    double c = 0.0;  // (l_max - l_min) / l_min
};

inline ContrastMeasurement weber_contrast(int l_max, int l_min) {
    if (l_min < 0 || l_max > 255 || l_max < l_min)
        throw std::invalid_argument("weber_contrast: need 0 <= l_min <= l_max <= 255");
    if (l_min == 0)
        throw std::invalid_argument("weber_contrast: undefined for l_min = 0");
    return {static_cast<std::uint8_t>(l_max), static_cast<std::uint8_t>(l_min),
            static_cast<double>(l_max - l_min) / l_min};
}

struct ImageStats {
    double mean = 0.0;
    double stddev = 0.0;  // population
    std::uint8_t min = 0;
    std::uint8_t max = 0;
    std::array<std::uint64_t, 256> histogram{};
    double clipped_fraction = 0.0;  // filled by pipelines, not by image_stats
};

inline ImageStats image_stats(const GrayImage& f) {
    ImageStats s;
    s.min = 255;
    s.max = 0;
    double sum = 0.0, sumsq = 0.0;
    for (std::uint8_t v : f.data) {
        ++s.histogram[v];
        s.min = std::min(s.min, v);
        s.max = std::max(s.max, v);
        sum += v;
        sumsq += static_cast<double>(v) * v;
    }
    const double n = static_cast<double>(f.pixel_count());
    s.mean = sum / n;
    const double var = sumsq / n - s.mean * s.mean;
    s.stddev = var > 0.0 ? std::sqrt(var) : 0.0;
    return s;
}

/// Share of values that fell outside [0, 255] before quantization.
inline double clipped_fraction(const RealMap& v) {
    std::size_t clipped = 0;
    for (double x : v.data)
        if (x < 0.0 || x > 255.0) ++clipped;
    return static_cast<double>(clipped) / static_cast<double>(v.data.size());
}

/// Standard cumulative-histogram remap to [0, 255]. The mapping is monotone
/// non-decreasing; a constant image is returned unchanged.
inline GrayImage histogram_equalize(const GrayImage& f) {
    const ImageStats s = image_stats(f);
    const std::uint64_t n = f.pixel_count();

    std::array<std::uint64_t, 256> cdf{};
    std::uint64_t acc = 0;
    for (int v = 0; v < 256; ++v) {
        acc += s.histogram[static_cast<std::size_t>(v)];
        cdf[static_cast<std::size_t>(v)] = acc;
    }
    const std::uint64_t cdf_min = cdf[s.min];
    if (cdf_min == n) return f;  // single occupied level

    std::array<std::uint8_t, 256> lut{};
    for (int v = 0; v < 256; ++v) {
        const double t = static_cast<double>(cdf[static_cast<std::size_t>(v)] - cdf_min) /
                         static_cast<double>(n - cdf_min);
        lut[static_cast<std::size_t>(v)] = static_cast<std::uint8_t>(std::round(t * 255.0));
    }
    GrayImage out = f;
    for (auto& v : out.data) v = lut[v];
    return out;
}

}  // namespace lumorph
