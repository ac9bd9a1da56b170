#pragma once

#include "lumorph/image.hpp"
#include "lumorph/morphology.hpp"

namespace lumorph {

inline const double kLog256 = std::log(256.0);

/// Gain of the logarithmic Weber operator for a background reference value.
inline double weber_gain(double reference) { return (255.0 - reference) / kLog256; }

/// One tile of the block-analysis grid, with its extrema, criterion and gains.
struct Block {
    int x = 0, y = 0;       // origin
    int w = 0, h = 0;       // extent (edge blocks may be smaller)
    std::uint8_t min = 0;   // m_i
    std::uint8_t max = 0;   // M_i
    double tau = 0.0;       // (m_i + M_i) / 2, kept exact
    double gain_dark = 0.0;    // (255 - m_i) / log 256
    double gain_bright = 0.0;  // (255 - M_i) / log 256
};

struct BlockGrid {
    int block_w = 0, block_h = 0;
    int cols = 0, rows = 0;
    std::vector<Block> blocks;  // row-major over the grid

    const Block& block_for_pixel(int px, int py) const {
        return blocks[static_cast<std::size_t>(py / block_h) * cols + px / block_w];
    }
};

/// Per-pixel background model: criterion tau, 8-bit background parameter,
/// and the derived gain.
struct BackgroundMap {
    RealMap tau;
    GrayImage background;
    RealMap gain;
};

/// Tile the image into block_w x block_h blocks anchored at (0,0) and compute
/// per-block extrema, criterion and gains.
inline BlockGrid block_stats(const GrayImage& f, int block_w, int block_h) {
    if (block_w < 1 || block_h < 1 || block_w > f.width || block_h > f.height)
        throw std::invalid_argument("block dimensions must be in [1, image size]");
    BlockGrid grid;
    grid.block_w = block_w;
    grid.block_h = block_h;
    grid.cols = (f.width + block_w - 1) / block_w;
    grid.rows = (f.height + block_h - 1) / block_h;
    grid.blocks.reserve(static_cast<std::size_t>(grid.cols) * grid.rows);
    for (int by = 0; by < grid.rows; ++by)
        for (int bx = 0; bx < grid.cols; ++bx) {
            Block b;
            b.x = bx * block_w;
            b.y = by * block_h;
            b.w = std::min(block_w, f.width - b.x);
            b.h = std::min(block_h, f.height - b.y);
            b.min = 255;
            b.max = 0;
            for (int y = b.y; y < b.y + b.h; ++y)
                for (int x = b.x; x < b.x + b.w; ++x) {
                    const std::uint8_t v = f.at(x, y);
                    b.min = std::min(b.min, v);
                    b.max = std::max(b.max, v);
                }
            b.tau = (static_cast<double>(b.min) + b.max) / 2.0;
            b.gain_dark = weber_gain(b.min);
            b.gain_bright = weber_gain(b.max);
            grid.blocks.push_back(b);
        }
    return grid;
}

/// Expand the block grid into per-pixel layers: tau_i, the branch offset
/// (M_i on the dark branch, m_i on the clear branch) and the matching gain.
inline BackgroundMap block_background(const GrayImage& f, int block_w, int block_h) {
    const BlockGrid grid = block_stats(f, block_w, block_h);
    BackgroundMap bg{RealMap(f.width, f.height), GrayImage(f.width, f.height),
                     RealMap(f.width, f.height)};
    for (int y = 0; y < f.height; ++y)
        for (int x = 0; x < f.width; ++x) {
            const Block& b = grid.block_for_pixel(x, y);
            bg.tau.at(x, y) = b.tau;
            const bool dark = f.at(x, y) <= b.tau;
            bg.background.at(x, y) = dark ? b.max : b.min;
            bg.gain.at(x, y) = dark ? b.gain_dark : b.gain_bright;
        }
    return bg;
}

/// Background model from the erosion-dilation criterion: tau is the midpoint
/// of the mu-scale extrema, the background parameter follows the dark/clear
/// branch, and the gain derives from tau.
inline BackgroundMap tau_erosion_dilation(const GrayImage& f, int mu) {
    const GrayImage eroded = erode(f, mu);
    const GrayImage dilated = dilate(f, mu);
    BackgroundMap bg{RealMap(f.width, f.height), GrayImage(f.width, f.height),
                     RealMap(f.width, f.height)};
    for (std::size_t i = 0; i < f.data.size(); ++i) {
        const double tau = (static_cast<double>(eroded.data[i]) + dilated.data[i]) / 2.0;
        bg.tau.data[i] = tau;
        bg.background.data[i] = f.data[i] <= tau ? dilated.data[i] : eroded.data[i];
        bg.gain.data[i] = weber_gain(tau);
    }
    return bg;
}

/// Background model from opening by reconstruction: tau is the reconstructed
/// opening, the background parameter its unit (3x3) erosion, and the gain
/// derives from the background parameter.
inline BackgroundMap background_obr(const GrayImage& f, int mu) {
    const GrayImage tau_img = opening_by_reconstruction(f, mu);
    const GrayImage b = erode(tau_img, 1);
    BackgroundMap bg{RealMap(f.width, f.height), GrayImage(f.width, f.height),
                     RealMap(f.width, f.height)};
    bg.background = b;
    for (std::size_t i = 0; i < f.data.size(); ++i) {
        bg.tau.data[i] = tau_img.data[i];
        bg.gain.data[i] = weber_gain(b.data[i]);
    }
    return bg;
}

}  // namespace lumorph
