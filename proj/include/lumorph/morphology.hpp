#pragma once

#include <algorithm>
#include <deque>
#include <queue>
#include <span>

#include "lumorph/image.hpp"

namespace lumorph {

/// Kernel selection for erode/dilate. Both produce bit-identical output;
/// Naive is the O(mu^2)-per-pixel reference, Separable the fast path.
enum class MorphImpl { Naive, Separable };

enum class ExtremumKind { Min, Max };

namespace detail {

// Sliding extremum over [i-mu, i+mu] clipped to the sequence, via a
// monotonic index deque. Amortized O(1) comparisons per element.
template <typename Compare>
void running_extremum(std::span<const std::uint8_t> in, std::span<std::uint8_t> out,
                      int mu, Compare wins) {
    const int n = static_cast<int>(in.size());
    std::deque<int> wedge;  // indices, values monotone from front
    int next = 0;
    for (int i = 0; i < n; ++i) {
        for (; next <= std::min(i + mu, n - 1); ++next) {
            while (!wedge.empty() && !wins(in[wedge.back()], in[next])) wedge.pop_back();
            wedge.push_back(next);
        }
        while (wedge.front() < i - mu) wedge.pop_front();
        out[i] = in[wedge.front()];
    }
}

inline void running_extremum(std::span<const std::uint8_t> in, std::span<std::uint8_t> out,
                             int mu, ExtremumKind kind) {
    if (kind == ExtremumKind::Min)
        running_extremum(in, out, mu, std::less<std::uint8_t>{});
    else
        running_extremum(in, out, mu, std::greater<std::uint8_t>{});
}

// Full-image window extremum with windows clipped at the borders.
inline GrayImage window_extremum_naive(const GrayImage& f, int mu, ExtremumKind kind) {
    GrayImage out(f.width, f.height);
    for (int y = 0; y < f.height; ++y) {
        const int y0 = std::max(0, y - mu), y1 = std::min(f.height - 1, y + mu);
        for (int x = 0; x < f.width; ++x) {
            const int x0 = std::max(0, x - mu), x1 = std::min(f.width - 1, x + mu);
            std::uint8_t best = f.at(x0, y0);
            for (int v = y0; v <= y1; ++v)
                for (int u = x0; u <= x1; ++u) {
                    std::uint8_t p = f.at(u, v);
                    if (kind == ExtremumKind::Min ? p < best : p > best) best = p;
                }
            out.at(x, y) = best;
        }
    }
    return out;
}

// Square flat SE factors into a horizontal pass then a vertical pass.
inline GrayImage window_extremum_separable(const GrayImage& f, int mu, ExtremumKind kind) {
    GrayImage rows(f.width, f.height);
    for (int y = 0; y < f.height; ++y) {
        std::span<const std::uint8_t> in(f.data.data() + static_cast<std::size_t>(y) * f.width,
                                         static_cast<std::size_t>(f.width));
        std::span<std::uint8_t> out(rows.data.data() + static_cast<std::size_t>(y) * f.width,
                                    static_cast<std::size_t>(f.width));
        running_extremum(in, out, mu, kind);
    }
    GrayImage result(f.width, f.height);
    std::vector<std::uint8_t> col(static_cast<std::size_t>(f.height));
    std::vector<std::uint8_t> colout(static_cast<std::size_t>(f.height));
    for (int x = 0; x < f.width; ++x) {
        for (int y = 0; y < f.height; ++y) col[static_cast<std::size_t>(y)] = rows.at(x, y);
        running_extremum(col, colout, mu, kind);
        for (int y = 0; y < f.height; ++y) result.at(x, y) = colout[static_cast<std::size_t>(y)];
    }
    return result;
}

inline GrayImage window_extremum(const GrayImage& f, int mu, ExtremumKind kind, MorphImpl impl) {
    if (mu < 0) throw std::invalid_argument("mu must be non-negative");
    if (mu == 0) return f;
    return impl == MorphImpl::Naive ? window_extremum_naive(f, mu, kind)
                                    : window_extremum_separable(f, mu, kind);
}

}  // namespace detail

/// 1-D running extremum over a centered odd window, borders clipped.
inline std::vector<std::uint8_t> running_extremum_1d(std::span<const std::uint8_t> line,
                                                     int window, ExtremumKind kind) {
    if (window < 1 || window % 2 == 0)
        throw std::invalid_argument("window must be odd and positive");
    std::vector<std::uint8_t> out(line.size());
    if (!line.empty()) detail::running_extremum(line, out, window / 2, kind);
    return out;
}

/// Minimum over the (2mu+1)x(2mu+1) square centered at each pixel.
inline GrayImage erode(const GrayImage& f, int mu, MorphImpl impl = MorphImpl::Separable) {
    return detail::window_extremum(f, mu, ExtremumKind::Min, impl);
}

/// Maximum over the (2mu+1)x(2mu+1) square centered at each pixel.
inline GrayImage dilate(const GrayImage& f, int mu, MorphImpl impl = MorphImpl::Separable) {
    return detail::window_extremum(f, mu, ExtremumKind::Max, impl);
}

inline GrayImage open(const GrayImage& f, int mu, MorphImpl impl = MorphImpl::Separable) {
    return dilate(erode(f, mu, impl), mu, impl);
}

inline GrayImage close(const GrayImage& f, int mu, MorphImpl impl = MorphImpl::Separable) {
    return erode(dilate(f, mu, impl), mu, impl);
}

/// One elementary geodesic step: 3x3 dilation of the marker, clipped under the mask.
inline GrayImage geodesic_dilate(const GrayImage& marker, const GrayImage& mask) {
    if (!marker.same_shape(mask)) throw ShapeError("geodesic_dilate: dimension mismatch");
    for (std::size_t i = 0; i < marker.data.size(); ++i)
        if (marker.data[i] > mask.data[i])
            throw std::invalid_argument("geodesic_dilate: marker exceeds mask");
    return pointwise_min(dilate(marker, 1), mask);
}

/// Reconstruction by dilation: the fixpoint of iterated geodesic dilation.
/// Hybrid algorithm: forward and backward raster sweeps, then a FIFO queue
/// for the remaining propagation fronts. 8-connectivity.
inline GrayImage reconstruct_by_dilation(const GrayImage& marker, const GrayImage& mask) {
    if (!marker.same_shape(mask)) throw ShapeError("reconstruct: dimension mismatch");
    for (std::size_t i = 0; i < marker.data.size(); ++i)
        if (marker.data[i] > mask.data[i])
            throw std::invalid_argument("reconstruct: marker exceeds mask");

    const int w = marker.width, h = marker.height;
    GrayImage out = marker;

    // forward sweep: neighbors already visited in raster order
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            std::uint8_t m = out.at(x, y);
            if (x > 0) m = std::max(m, out.at(x - 1, y));
            if (y > 0) {
                if (x > 0) m = std::max(m, out.at(x - 1, y - 1));
                m = std::max(m, out.at(x, y - 1));
                if (x + 1 < w) m = std::max(m, out.at(x + 1, y - 1));
            }
            out.at(x, y) = std::min(m, mask.at(x, y));
        }

    // backward sweep, queueing pixels that still have work downstream
    std::queue<std::pair<int, int>> fifo;
    for (int y = h - 1; y >= 0; --y)
        for (int x = w - 1; x >= 0; --x) {
            std::uint8_t m = out.at(x, y);
            if (x + 1 < w) m = std::max(m, out.at(x + 1, y));
            if (y + 1 < h) {
                if (x > 0) m = std::max(m, out.at(x - 1, y + 1));
                m = std::max(m, out.at(x, y + 1));
                if (x + 1 < w) m = std::max(m, out.at(x + 1, y + 1));
            }
            const std::uint8_t v = std::min(m, mask.at(x, y));
            out.at(x, y) = v;

            auto needs_push = [&](int nx, int ny) {
                return out.at(nx, ny) < v && out.at(nx, ny) < mask.at(nx, ny);
            };
            bool push = false;
            if (x + 1 < w && needs_push(x + 1, y)) push = true;
            if (!push && y + 1 < h) {
                if (x > 0 && needs_push(x - 1, y + 1)) push = true;
                if (!push && needs_push(x, y + 1)) push = true;
                if (!push && x + 1 < w && needs_push(x + 1, y + 1)) push = true;
            }
            if (push) fifo.emplace(x, y);
        }

    while (!fifo.empty()) {
        auto [x, y] = fifo.front();
        fifo.pop();
        const std::uint8_t v = out.at(x, y);
        for (int dy = -1; dy <= 1; ++dy)
            for (int dx = -1; dx <= 1; ++dx) {
                if (dx == 0 && dy == 0) continue;
                const int nx = x + dx, ny = y + dy;
                if (nx < 0 || nx >= w || ny < 0 || ny >= h) continue;
                if (out.at(nx, ny) < v && out.at(nx, ny) < mask.at(nx, ny)) {
                    out.at(nx, ny) = std::min(v, mask.at(nx, ny));
                    fifo.emplace(nx, ny);
                }
            }
    }
    return out;
}

/// Erode, then reconstruct under the original: removes structures narrower
/// than the window while restoring the shape of everything that survives.
inline GrayImage opening_by_reconstruction(const GrayImage& f, int mu) {
    if (mu == 0) return f;
    return reconstruct_by_dilation(erode(f, mu), f);
}

inline GrayImage closing_by_reconstruction(const GrayImage& f, int mu) {
    if (mu == 0) return f;
    return complement(opening_by_reconstruction(complement(f), mu));
}

}  // namespace lumorph
