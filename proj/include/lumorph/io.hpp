#pragma once

#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <variant>

#include <png.h>

#include "lumorph/image.hpp"

namespace lumorph {

/// Thrown for missing files, malformed headers, unsupported depths and
/// truncated payloads.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class ImageFormat { PgmBinary, PgmAscii, PpmBinary, Png };

using AnyImage = std::variant<GrayImage, RgbImage>;

/// BT.601 luma, rounded half away from zero.
inline GrayImage to_gray(const RgbImage& img) {
    GrayImage out(img.width(), img.height());
    for (std::size_t i = 0; i < out.data.size(); ++i) {
        const double y = 0.299 * img.r.data[i] + 0.587 * img.g.data[i] + 0.114 * img.b.data[i];
        out.data[i] = static_cast<std::uint8_t>(std::round(y));
    }
    return out;
}

inline GrayImage to_gray(const AnyImage& img) {
    if (const auto* g = std::get_if<GrayImage>(&img)) return *g;
    return to_gray(std::get<RgbImage>(img));
}

/// Replicate a gray image into three identical planes.
inline RgbImage replicate_gray(const GrayImage& g) { return RgbImage(g, g, g); }

namespace detail {

// One whitespace-delimited token, skipping '#' comments to end of line.
inline std::string next_token(std::istream& in, const std::string& path) {
    for (;;) {
        int c = in.peek();
        if (c == EOF) throw IoError(path + ": truncated header");
        if (c == '#') {
            std::string line;
            std::getline(in, line);
            continue;
        }
        if (std::isspace(c)) {
            in.get();
            continue;
        }
        break;
    }
    std::string tok;
    in >> tok;
    return tok;
}

inline int header_int(std::istream& in, const std::string& path, const char* what) {
    const std::string tok = next_token(in, path);
    try {
        std::size_t pos = 0;
        const int v = std::stoi(tok, &pos);
        if (pos != tok.size() || v < 0) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw IoError(path + ": malformed header field (" + std::string(what) + ")");
    }
}

inline AnyImage read_netpbm(std::istream& in, const std::string& magic, const std::string& path) {
    const int w = header_int(in, path, "width");
    const int h = header_int(in, path, "height");
    const int maxval = header_int(in, path, "maxval");
    if (w < 1 || h < 1) throw IoError(path + ": malformed header (non-positive dimensions)");
    if (maxval != 255)
        throw IoError(path + ": unsupported depth (maxval " + std::to_string(maxval) +
                      ", only 255 supported)");
    const std::size_t npix = static_cast<std::size_t>(w) * h;

    if (magic == "P2") {
        GrayImage img(w, h);
        for (std::size_t i = 0; i < npix; ++i) {
            int v;
            if (!(in >> v)) throw IoError(path + ": truncated pixel data");
            if (v < 0 || v > 255) throw IoError(path + ": sample out of range");
            img.data[i] = static_cast<std::uint8_t>(v);
        }
        return img;
    }

    in.get();  // single whitespace byte after maxval
    const std::size_t nbytes = magic == "P6" ? npix * 3 : npix;
    std::vector<char> buf(nbytes);
    in.read(buf.data(), static_cast<std::streamsize>(nbytes));
    if (static_cast<std::size_t>(in.gcount()) != nbytes)
        throw IoError(path + ": truncated pixel data");

    if (magic == "P5") {
        GrayImage img(w, h);
        std::copy(buf.begin(), buf.end(), reinterpret_cast<char*>(img.data.data()));
        return img;
    }
    RgbImage img(w, h);
    for (std::size_t i = 0; i < npix; ++i) {
        img.r.data[i] = static_cast<std::uint8_t>(buf[i * 3]);
        img.g.data[i] = static_cast<std::uint8_t>(buf[i * 3 + 1]);
        img.b.data[i] = static_cast<std::uint8_t>(buf[i * 3 + 2]);
    }
    return img;
}

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};

inline AnyImage read_png(const std::string& path) {
    std::unique_ptr<std::FILE, FileCloser> fp(std::fopen(path.c_str(), "rb"));
    if (!fp) throw IoError(path + ": cannot open file");

    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw IoError(path + ": png decoder init failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw IoError(path + ": malformed png");
    }
    png_init_io(png, fp.get());
    png_read_info(png, info);

    png_set_strip_16(png);
    png_set_strip_alpha(png);
    png_set_palette_to_rgb(png);
    png_set_expand_gray_1_2_4_to_8(png);
    png_read_update_info(png, info);

    const int w = static_cast<int>(png_get_image_width(png, info));
    const int h = static_cast<int>(png_get_image_height(png, info));
    const int channels = png_get_channels(png, info);
    if (channels != 1 && channels != 3) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw IoError(path + ": unsupported png channel layout");
    }

    std::vector<std::uint8_t> row(static_cast<std::size_t>(w) * channels);
    AnyImage result = channels == 1 ? AnyImage(GrayImage(w, h)) : AnyImage(RgbImage(w, h));
    for (int y = 0; y < h; ++y) {
        png_read_row(png, row.data(), nullptr);
        if (channels == 1) {
            auto& img = std::get<GrayImage>(result);
            for (int x = 0; x < w; ++x) img.at(x, y) = row[static_cast<std::size_t>(x)];
        } else {
            auto& img = std::get<RgbImage>(result);
            for (int x = 0; x < w; ++x) {
                img.r.at(x, y) = row[static_cast<std::size_t>(x) * 3];
                img.g.at(x, y) = row[static_cast<std::size_t>(x) * 3 + 1];
                img.b.at(x, y) = row[static_cast<std::size_t>(x) * 3 + 2];
            }
        }
    }
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);
    return result;
}

inline void write_png(const std::string& path, int w, int h, int channels,
                      const std::vector<std::uint8_t>& interleaved) {
    std::unique_ptr<std::FILE, FileCloser> fp(std::fopen(path.c_str(), "wb"));
    if (!fp) throw IoError(path + ": cannot open file for writing");

    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        png_destroy_write_struct(&png, &info);
        throw IoError(path + ": png encoder init failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw IoError(path + ": png write failed");
    }
    png_init_io(png, fp.get());
    png_set_IHDR(png, info, static_cast<png_uint_32>(w), static_cast<png_uint_32>(h), 8,
                 channels == 1 ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    for (int y = 0; y < h; ++y)
        png_write_row(png, const_cast<png_bytep>(
                               interleaved.data() + static_cast<std::size_t>(y) * w * channels));
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

}  // namespace detail

/// Read a raster file; the format is detected from the magic bytes.
/// PGM decodes to GrayImage, PPM to RgbImage, PNG to either.
inline AnyImage read_image(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(path + ": cannot open file");
    char magic[2] = {0, 0};
    in.read(magic, 2);
    if (in.gcount() != 2) throw IoError(path + ": truncated header");
    if (static_cast<unsigned char>(magic[0]) == 0x89 && magic[1] == 'P') {
        in.close();
        return detail::read_png(path);
    }
    const std::string m{magic[0], magic[1]};
    if (m == "P5" || m == "P2" || m == "P6") return detail::read_netpbm(in, m, path);
    throw IoError(path + ": unrecognized format (magic '" + m + "')");
}

inline void write_image(const GrayImage& img, const std::string& path, ImageFormat fmt) {
    if (fmt == ImageFormat::Png) {
        detail::write_png(path, img.width, img.height, 1, img.data);
        return;
    }
    if (fmt == ImageFormat::PpmBinary)
        throw IoError(path + ": grayscale image cannot be written as PPM; replicate explicitly");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError(path + ": cannot open file for writing");
    if (fmt == ImageFormat::PgmBinary) {
        out << "P5\n" << img.width << ' ' << img.height << "\n255\n";
        out.write(reinterpret_cast<const char*>(img.data.data()),
                  static_cast<std::streamsize>(img.data.size()));
    } else {
        out << "P2\n" << img.width << ' ' << img.height << "\n255\n";
        for (int y = 0; y < img.height; ++y) {
            for (int x = 0; x < img.width; ++x)
                out << static_cast<int>(img.at(x, y)) << (x + 1 < img.width ? ' ' : '\n');
        }
    }
    if (!out) throw IoError(path + ": write failed");
}

inline void write_image(const RgbImage& img, const std::string& path, ImageFormat fmt) {
    if (fmt == ImageFormat::PgmBinary || fmt == ImageFormat::PgmAscii)
        throw IoError(path + ": color image cannot be written as PGM");
    std::vector<std::uint8_t> interleaved(static_cast<std::size_t>(img.width()) * img.height() * 3);
    for (std::size_t i = 0; i < img.r.data.size(); ++i) {
        interleaved[i * 3] = img.r.data[i];
        interleaved[i * 3 + 1] = img.g.data[i];
        interleaved[i * 3 + 2] = img.b.data[i];
    }
    if (fmt == ImageFormat::Png) {
        detail::write_png(path, img.width(), img.height(), 3, interleaved);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError(path + ": cannot open file for writing");
    out << "P6\n" << img.width() << ' ' << img.height() << "\n255\n";
    out.write(reinterpret_cast<const char*>(interleaved.data()),
              static_cast<std::streamsize>(interleaved.size()));
    if (!out) throw IoError(path + ": write failed");
}

inline void write_image(const AnyImage& img, const std::string& path, ImageFormat fmt) {
    if (const auto* g = std::get_if<GrayImage>(&img))
        write_image(*g, path, fmt);
    else
        write_image(std::get<RgbImage>(img), path, fmt);
}

/// Pick an output format from the file extension: .pgm -> P5, .ppm -> P6,
/// .png -> PNG.
inline ImageFormat format_for_path(const std::string& path) {
    const auto dot = path.rfind('.');
    const std::string ext = dot == std::string::npos ? "" : path.substr(dot);
    if (ext == ".pgm") return ImageFormat::PgmBinary;
    if (ext == ".ppm") return ImageFormat::PpmBinary;
    if (ext == ".png") return ImageFormat::Png;
    throw IoError(path + ": cannot infer format from extension");
}

}  // namespace lumorph
