// Test-only oracles and generators. Everything here is written straight from
// the operator definitions and stays independent of the library kernels it
// checks: window extrema are exhaustive double loops, reconstruction iterates
// the elementary geodesic step until nothing changes, and the enhancement
// oracles are scalar transcriptions of the defining equations.
#pragma once

#include <cmath>
#include <random>

#include "lumorph/image.hpp"

namespace oracle {

using lumorph::GrayImage;
using lumorph::RealMap;

inline GrayImage random_image(std::mt19937& rng, int w, int h, int lo = 0, int hi = 255) {
    std::uniform_int_distribution<int> dist(lo, hi);
    GrayImage img(w, h);
    for (auto& v : img.data) v = static_cast<std::uint8_t>(dist(rng));
    return img;
}

inline bool le(const GrayImage& a, const GrayImage& b) {
    for (std::size_t i = 0; i < a.data.size(); ++i)
        if (a.data[i] > b.data[i]) return false;
    return true;
}

// Exhaustive clipped-window minimum.
inline GrayImage erode_bruteforce(const GrayImage& f, int mu) {
    GrayImage out(f.width, f.height);
    for (int y = 0; y < f.height; ++y)
        for (int x = 0; x < f.width; ++x) {
            int best = 255;
            for (int v = y - mu; v <= y + mu; ++v)
                for (int u = x - mu; u <= x + mu; ++u) {
                    if (u < 0 || u >= f.width || v < 0 || v >= f.height) continue;
                    best = std::min(best, static_cast<int>(f.at(u, v)));
                }
            out.at(x, y) = static_cast<std::uint8_t>(best);
        }
    return out;
}

// Exhaustive clipped-window maximum.
inline GrayImage dilate_bruteforce(const GrayImage& f, int mu) {
    GrayImage out(f.width, f.height);
    for (int y = 0; y < f.height; ++y)
        for (int x = 0; x < f.width; ++x) {
            int best = 0;
            for (int v = y - mu; v <= y + mu; ++v)
                for (int u = x - mu; u <= x + mu; ++u) {
                    if (u < 0 || u >= f.width || v < 0 || v >= f.height) continue;
                    best = std::max(best, static_cast<int>(f.at(u, v)));
                }
            out.at(x, y) = static_cast<std::uint8_t>(best);
        }
    return out;
}

inline GrayImage open_bruteforce(const GrayImage& f, int mu) {
    return dilate_bruteforce(erode_bruteforce(f, mu), mu);
}

inline GrayImage close_bruteforce(const GrayImage& f, int mu) {
    return erode_bruteforce(dilate_bruteforce(f, mu), mu);
}

// One elementary geodesic step, then iterate until stable.
inline GrayImage reconstruct_bruteforce(const GrayImage& marker, const GrayImage& mask) {
    GrayImage cur = marker;
    for (;;) {
        GrayImage step = dilate_bruteforce(cur, 1);
        for (std::size_t i = 0; i < step.data.size(); ++i)
            step.data[i] = std::min(step.data[i], mask.data[i]);
        if (step == cur) return cur;
        cur = std::move(step);
    }
}

inline GrayImage obr_bruteforce(const GrayImage& f, int mu) {
    if (mu == 0) return f;
    return reconstruct_bruteforce(erode_bruteforce(f, mu), f);
}

inline const double log256 = std::log(256.0);

// Scalar transcription of the block-analysis enhancement: per-block extrema
// by exhaustive scan, criterion (m+M)/2, dark pixels get (255-m)/log256 gain
// with offset M, clear pixels (255-M)/log256 with offset m.
inline RealMap enhance_block_equations(const GrayImage& f, int bw, int bh) {
    RealMap v(f.width, f.height);
    for (int y = 0; y < f.height; ++y)
        for (int x = 0; x < f.width; ++x) {
            const int bx0 = (x / bw) * bw, by0 = (y / bh) * bh;
            int m = 255, M = 0;
            for (int yy = by0; yy < std::min(by0 + bh, f.height); ++yy)
                for (int xx = bx0; xx < std::min(bx0 + bw, f.width); ++xx) {
                    m = std::min(m, static_cast<int>(f.at(xx, yy)));
                    M = std::max(M, static_cast<int>(f.at(xx, yy)));
                }
            const double tau = (m + M) / 2.0;
            const double fv = f.at(x, y);
            if (fv <= tau)
                v.at(x, y) = (255.0 - m) / log256 * std::log(fv + 1.0) + M;
            else
                v.at(x, y) = (255.0 - M) / log256 * std::log(fv + 1.0) + m;
        }
    return v;
}

// Scalar transcription of the erosion-dilation enhancement.
inline RealMap enhance_ed_equations(const GrayImage& f, int mu) {
    const GrayImage e = erode_bruteforce(f, mu);
    const GrayImage d = dilate_bruteforce(f, mu);
    RealMap v(f.width, f.height);
    for (int y = 0; y < f.height; ++y)
        for (int x = 0; x < f.width; ++x) {
            const double tau = (static_cast<double>(e.at(x, y)) + d.at(x, y)) / 2.0;
            const double k = (255.0 - tau) / log256;
            const double fv = f.at(x, y);
            const double offset = fv <= tau ? d.at(x, y) : e.at(x, y);
            v.at(x, y) = k * std::log(fv + 1.0) + offset;
        }
    return v;
}

// Scalar transcription of the opening-by-reconstruction enhancement.
inline RealMap enhance_obr_equations(const GrayImage& f, int mu) {
    const GrayImage b = erode_bruteforce(obr_bruteforce(f, mu), 1);
    RealMap v(f.width, f.height);
    for (int y = 0; y < f.height; ++y)
        for (int x = 0; x < f.width; ++x) {
            const double k = (255.0 - b.at(x, y)) / log256;
            v.at(x, y) = k * std::log(static_cast<double>(f.at(x, y)) + 1.0) + b.at(x, y);
        }
    return v;
}

}  // namespace oracle
