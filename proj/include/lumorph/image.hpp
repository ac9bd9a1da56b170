#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace lumorph {

/// Thrown when two images that must share dimensions do not.
struct ShapeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// 8-bit grayscale raster, row-major.
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> data;

    GrayImage() = default;
    GrayImage(int w, int h, std::uint8_t fill = 0)
        : width(w), height(h), data(static_cast<std::size_t>(w) * h, fill) {
        if (w < 1 || h < 1) throw std::invalid_argument("image dimensions must be positive");
    }

    std::uint8_t& at(int x, int y) { return data[static_cast<std::size_t>(y) * width + x]; }
    std::uint8_t at(int x, int y) const { return data[static_cast<std::size_t>(y) * width + x]; }

    std::size_t pixel_count() const { return data.size(); }
    bool same_shape(const GrayImage& o) const { return width == o.width && height == o.height; }

    bool operator==(const GrayImage&) const = default;
};

/// Planar RGB: three grayscale planes of identical dimensions.
struct RgbImage {
    GrayImage r, g, b;

    RgbImage() = default;
    RgbImage(int w, int h) : r(w, h), g(w, h), b(w, h) {}
    RgbImage(GrayImage rr, GrayImage gg, GrayImage bb)
        : r(std::move(rr)), g(std::move(gg)), b(std::move(bb)) {
        if (!r.same_shape(g) || !r.same_shape(b))
            throw ShapeError("rgb planes must share dimensions");
    }

    int width() const { return r.width; }
    int height() const { return r.height; }

    GrayImage& plane(int i) { return i == 0 ? r : (i == 1 ? g : b); }
    const GrayImage& plane(int i) const { return i == 0 ? r : (i == 1 ? g : b); }

    bool operator==(const RgbImage&) const = default;
};

/// Row-major grid of doubles; holds criteria, gains, and pre-quantization
/// enhancement values that do not fit the 8-bit range.
struct RealMap {
    int width = 0;
    int height = 0;
    std::vector<double> data;

    RealMap() = default;
    RealMap(int w, int h, double fill = 0.0)
        : width(w), height(h), data(static_cast<std::size_t>(w) * h, fill) {
        if (w < 1 || h < 1) throw std::invalid_argument("map dimensions must be positive");
    }

    double& at(int x, int y) { return data[static_cast<std::size_t>(y) * width + x]; }
    double at(int x, int y) const { return data[static_cast<std::size_t>(y) * width + x]; }
};

inline GrayImage complement(const GrayImage& f) {
    GrayImage out = f;
    for (auto& v : out.data) v = static_cast<std::uint8_t>(255 - v);
    return out;
}

inline GrayImage pointwise_min(const GrayImage& f, const GrayImage& g) {
    if (!f.same_shape(g)) throw ShapeError("pointwise_min: dimension mismatch");
    GrayImage out = f;
    for (std::size_t i = 0; i < out.data.size(); ++i)
        out.data[i] = std::min(f.data[i], g.data[i]);
    return out;
}

/// Quantize a real map to 8 bits: round half away from zero, then clamp to [0, 255].
inline GrayImage clamp_round(const RealMap& v) {
    GrayImage out(v.width, v.height);
    for (std::size_t i = 0; i < v.data.size(); ++i) {
        double x = v.data[i];
        if (std::isnan(x)) throw std::invalid_argument("clamp_round: NaN value");
        double r = std::round(x);  // rounds half away from zero
        out.data[i] = static_cast<std::uint8_t>(r < 0.0 ? 0.0 : (r > 255.0 ? 255.0 : r));
    }
    return out;
}

}  // namespace lumorph
