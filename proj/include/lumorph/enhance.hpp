#pragma once

#include "lumorph/background.hpp"

namespace lumorph {

/// Selection of one of the three enhancement pipelines with its parameters.
struct EnhanceMethod {
    enum class Kind { Block, ErosionDilation, OpeningByReconstruction };

    Kind kind = Kind::Block;
    int block_w = 0, block_h = 0;  // Block only
    int mu = 0;                    // ErosionDilation / OpeningByReconstruction

    static EnhanceMethod block(int bw, int bh) {
        return {Kind::Block, bw, bh, 0};
    }
    static EnhanceMethod erosion_dilation(int mu) {
        return {Kind::ErosionDilation, 0, 0, mu};
    }
    static EnhanceMethod opening_by_reconstruction(int mu) {
        return {Kind::OpeningByReconstruction, 0, 0, mu};
    }
};

/// Pre-quantization block-analysis enhancement: per block, dark pixels
/// (f <= tau_i) get gain (255-m_i)/log256 and offset M_i, clear pixels get
/// gain (255-M_i)/log256 and offset m_i.
inline RealMap enhance_block_real(const GrayImage& f, int block_w, int block_h) {
    const BlockGrid grid = block_stats(f, block_w, block_h);
    RealMap v(f.width, f.height);
    for (int y = 0; y < f.height; ++y)
        for (int x = 0; x < f.width; ++x) {
            const Block& b = grid.block_for_pixel(x, y);
            const double fv = f.at(x, y);
            const double lg = std::log(fv + 1.0);
            v.at(x, y) = fv <= b.tau ? b.gain_dark * lg + b.max
                                     : b.gain_bright * lg + b.min;
        }
    return v;
}

inline GrayImage enhance_block(const GrayImage& f, int block_w, int block_h) {
    return clamp_round(enhance_block_real(f, block_w, block_h));
}

/// Pre-quantization erosion-dilation enhancement: gain from the midpoint
/// criterion, offset is the dilation on the dark branch and the erosion on
/// the clear branch.
inline RealMap enhance_erosion_dilation_real(const GrayImage& f, int mu) {
    const BackgroundMap bg = tau_erosion_dilation(f, mu);
    RealMap v(f.width, f.height);
    for (std::size_t i = 0; i < f.data.size(); ++i) {
        const double fv = f.data[i];
        v.data[i] = bg.gain.data[i] * std::log(fv + 1.0) + bg.background.data[i];
    }
    return v;
}

inline GrayImage enhance_erosion_dilation(const GrayImage& f, int mu) {
    return clamp_round(enhance_erosion_dilation_real(f, mu));
}

/// Pre-quantization opening-by-reconstruction enhancement: single formula,
/// offset and gain both from the eroded reconstructed opening.
inline RealMap enhance_obr_real(const GrayImage& f, int mu) {
    const BackgroundMap bg = background_obr(f, mu);
    RealMap v(f.width, f.height);
    for (std::size_t i = 0; i < f.data.size(); ++i) {
        const double fv = f.data[i];
        v.data[i] = bg.gain.data[i] * std::log(fv + 1.0) + bg.background.data[i];
    }
    return v;
}

inline GrayImage enhance_obr(const GrayImage& f, int mu) {
    return clamp_round(enhance_obr_real(f, mu));
}

inline RealMap enhance_real(const GrayImage& f, const EnhanceMethod& m) {
    switch (m.kind) {
        case EnhanceMethod::Kind::Block:
            return enhance_block_real(f, m.block_w, m.block_h);
        case EnhanceMethod::Kind::ErosionDilation:
            return enhance_erosion_dilation_real(f, m.mu);
        case EnhanceMethod::Kind::OpeningByReconstruction:
        default:
            return enhance_obr_real(f, m.mu);
    }
}

inline GrayImage enhance(const GrayImage& f, const EnhanceMethod& m) {
    return clamp_round(enhance_real(f, m));
}

/// Color extension: the selected grayscale pipeline applied to each plane.
inline RgbImage enhance_rgb(const RgbImage& img, const EnhanceMethod& m) {
    return RgbImage(enhance(img.r, m), enhance(img.g, m), enhance(img.b, m));
}

}  // namespace lumorph
