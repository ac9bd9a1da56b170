// lumorph command-line tool: morphology operators, background detection,
// contrast enhancement and a kernel benchmark.
//
// Exit codes: 0 success, 1 I/O or codec failure, 2 invalid arguments.

#include <chrono>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "lumorph/background.hpp"
#include "lumorph/enhance.hpp"
#include "lumorph/io.hpp"
#include "lumorph/metrics.hpp"
#include "lumorph/morphology.hpp"

namespace {

using namespace lumorph;
using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::string stem_of(const std::string& path) {
    const auto dot = path.rfind('.');
    return dot == std::string::npos ? path : path.substr(0, dot);
}

MorphImpl parse_impl(const std::string& s) {
    if (s == "naive") return MorphImpl::Naive;
    if (s == "separable") return MorphImpl::Separable;
    throw CLI::ValidationError("--impl", "unknown implementation '" + s + "'");
}

void write_gain_sidecar(const RealMap& gain, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError(path + ": cannot open file for writing");
    out << std::fixed << std::setprecision(6);
    for (int y = 0; y < gain.height; ++y) {
        for (int x = 0; x < gain.width; ++x)
            out << gain.at(x, y) << (x + 1 < gain.width ? ' ' : '\n');
    }
    if (!out) throw IoError(path + ": write failed");
}

struct MorphArgs {
    std::string op, impl = "separable", input, output;
    int mu = 0;
};

int run_morph(const MorphArgs& a) {
    const MorphImpl impl = parse_impl(a.impl);
    const GrayImage f = to_gray(read_image(a.input));
    const auto t0 = Clock::now();
    GrayImage out;
    if (a.op == "erode")
        out = erode(f, a.mu, impl);
    else if (a.op == "dilate")
        out = dilate(f, a.mu, impl);
    else if (a.op == "open")
        out = open(f, a.mu, impl);
    else if (a.op == "close")
        out = close(f, a.mu, impl);
    else if (a.op == "open-rec")
        out = opening_by_reconstruction(f, a.mu);
    else if (a.op == "close-rec")
        out = closing_by_reconstruction(f, a.mu);
    else
        throw CLI::ValidationError("--op", "unknown operation '" + a.op + "'");
    const double ms = elapsed_ms(t0);
    write_image(out, a.output, format_for_path(a.output));
    std::cerr << a.op << " mu=" << a.mu << " " << f.width << "x" << f.height << " "
              << std::fixed << std::setprecision(3) << ms << " ms\n";
    return 0;
}

struct MethodArgs {
    std::string method;
    int block_w = 0, block_h = 0, mu = -1;

    void validate() const {
        if (method == "block") {
            if (block_w < 1 || block_h < 1)
                throw CLI::ValidationError("--block-w/--block-h",
                                           "block method requires positive block dimensions");
        } else if (method == "ed" || method == "obr") {
            if (mu < 0) throw CLI::ValidationError("--mu", "method requires --mu >= 0");
        } else {
            throw CLI::ValidationError("--method", "unknown method '" + method + "'");
        }
    }

    BackgroundMap background_of(const GrayImage& f) const {
        if (method == "block") return block_background(f, block_w, block_h);
        if (method == "ed") return tau_erosion_dilation(f, mu);
        return background_obr(f, mu);
    }

    EnhanceMethod enhance_method() const {
        if (method == "block") return EnhanceMethod::block(block_w, block_h);
        if (method == "ed") return EnhanceMethod::erosion_dilation(mu);
        return EnhanceMethod::opening_by_reconstruction(mu);
    }
};

struct BackgroundArgs : MethodArgs {
    std::string input, out_prefix;
};

int run_background(const BackgroundArgs& a) {
    a.validate();
    const GrayImage f = to_gray(read_image(a.input));
    const BackgroundMap bg = a.background_of(f);
    write_image(clamp_round(bg.tau), a.out_prefix + "_tau.pgm", ImageFormat::PgmBinary);
    write_image(bg.background, a.out_prefix + "_bg.pgm", ImageFormat::PgmBinary);
    write_gain_sidecar(bg.gain, a.out_prefix + "_gain.txt");
    std::cerr << "background method=" << a.method << " " << f.width << "x" << f.height << "\n";
    return 0;
}

struct EnhanceArgs : MethodArgs {
    std::string input, output;
    bool json = false;
    bool dump_intermediates = false;
};

void dump_panels(const EnhanceArgs& a, const GrayImage& gray, const GrayImage& background) {
    const std::string stem = stem_of(a.output);
    const int mu = a.method == "block" ? 1 : a.mu;
    write_image(gray, stem + "_gray.pgm", ImageFormat::PgmBinary);
    write_image(erode(gray, mu), stem + "_eroded.pgm", ImageFormat::PgmBinary);
    write_image(dilate(gray, mu), stem + "_dilated.pgm", ImageFormat::PgmBinary);
    write_image(open(gray, mu), stem + "_opened.pgm", ImageFormat::PgmBinary);
    write_image(close(gray, mu), stem + "_closed.pgm", ImageFormat::PgmBinary);
    write_image(background, stem + "_background.pgm", ImageFormat::PgmBinary);
}

int run_enhance(const EnhanceArgs& a) {
    a.validate();
    const EnhanceMethod method = a.enhance_method();
    const AnyImage in = read_image(a.input);

    double clipped = 0.0;
    ImageStats before, after;
    AnyImage result;
    if (const auto* g = std::get_if<GrayImage>(&in)) {
        const RealMap v = enhance_real(*g, method);
        const GrayImage out = clamp_round(v);
        before = image_stats(*g);
        after = image_stats(out);
        clipped = clipped_fraction(v);
        if (a.dump_intermediates) dump_panels(a, *g, a.background_of(*g).background);
        result = out;
    } else {
        const auto& rgb = std::get<RgbImage>(in);
        RgbImage out;
        double mean_b = 0, mean_a = 0, sd_b = 0, sd_a = 0;
        for (int c = 0; c < 3; ++c) {
            const RealMap v = enhance_real(rgb.plane(c), method);
            out.plane(c) = clamp_round(v);
            clipped += clipped_fraction(v) / 3.0;
            const ImageStats sb = image_stats(rgb.plane(c));
            const ImageStats sa = image_stats(out.plane(c));
            mean_b += sb.mean / 3.0;
            mean_a += sa.mean / 3.0;
            sd_b += sb.stddev / 3.0;
            sd_a += sa.stddev / 3.0;
        }
        before.mean = mean_b;
        before.stddev = sd_b;
        after.mean = mean_a;
        after.stddev = sd_a;
        if (a.dump_intermediates) {
            const GrayImage gray = to_gray(rgb);
            dump_panels(a, gray, a.background_of(gray).background);
        }
        result = out;
    }
    write_image(result, a.output, format_for_path(a.output));

    if (a.json) {
        nlohmann::json j{{"mean_before", before.mean},   {"mean_after", after.mean},
                         {"stddev_before", before.stddev}, {"stddev_after", after.stddev},
                         {"clipped_fraction", clipped}};
        std::cout << j.dump() << "\n";
    } else {
        std::cout << std::setprecision(17);
        std::cout << "mean_before=" << before.mean << "\n"
                  << "mean_after=" << after.mean << "\n"
                  << "stddev_before=" << before.stddev << "\n"
                  << "stddev_after=" << after.stddev << "\n"
                  << "clipped_fraction=" << clipped << "\n";
    }
    return 0;
}

struct BenchArgs {
    std::vector<int> sizes;
    std::vector<int> mus;
    std::vector<std::string> impls;
    int reps = 5;
};

int run_bench(const BenchArgs& a) {
    if (a.sizes.empty() || a.mus.empty() || a.impls.empty())
        throw CLI::ValidationError("bench", "need --size, --mu-list and --impl");
    for (int s : a.sizes)
        if (s < 1) throw CLI::ValidationError("--size", "sizes must be positive");
    for (int m : a.mus)
        if (m < 0) throw CLI::ValidationError("--mu-list", "mu must be non-negative");
    std::vector<MorphImpl> impls;
    for (const auto& s : a.impls) impls.push_back(parse_impl(s));

    std::cout << "op,impl,size,mu,rep,millis\n";
    for (int size : a.sizes) {
        std::mt19937 rng(0x1209u + static_cast<unsigned>(size));
        std::uniform_int_distribution<int> dist(0, 255);
        GrayImage img(size, size);
        for (auto& v : img.data) v = static_cast<std::uint8_t>(dist(rng));
        for (int mu : a.mus)
            for (std::size_t i = 0; i < impls.size(); ++i)
                for (const char* op : {"erode", "dilate"})
                    for (int rep = 0; rep < a.reps; ++rep) {
                        const auto t0 = Clock::now();
                        GrayImage out = std::string(op) == "erode" ? erode(img, mu, impls[i])
                                                                   : dilate(img, mu, impls[i]);
                        const double ms = elapsed_ms(t0);
                        std::cout << op << ',' << a.impls[i] << ',' << size << ',' << mu << ','
                                  << rep << ',' << std::fixed << std::setprecision(4) << ms
                                  << "\n";
                    }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"grayscale morphology and low-light contrast enhancement"};
    app.require_subcommand(1);

    MorphArgs morph_args;
    auto* morph_cmd = app.add_subcommand("morph", "apply a morphological operator");
    morph_cmd->add_option("--op", morph_args.op, "erode|dilate|open|close|open-rec|close-rec")
        ->required();
    morph_cmd->add_option("--mu", morph_args.mu, "structuring element scale")
        ->required()
        ->check(CLI::NonNegativeNumber);
    morph_cmd->add_option("--impl", morph_args.impl, "naive|separable (default separable)");
    morph_cmd->add_option("input", morph_args.input)->required();
    morph_cmd->add_option("output", morph_args.output)->required();

    BackgroundArgs bg_args;
    auto* bg_cmd = app.add_subcommand("background", "detect the image background");
    bg_cmd->add_option("--method", bg_args.method, "block|ed|obr")->required();
    bg_cmd->add_option("--block-w", bg_args.block_w, "block width (block method)");
    bg_cmd->add_option("--block-h", bg_args.block_h, "block height (block method)");
    bg_cmd->add_option("--mu", bg_args.mu, "structuring element scale (ed/obr)");
    bg_cmd->add_option("input", bg_args.input)->required();
    bg_cmd->add_option("out_prefix", bg_args.out_prefix)->required();

    EnhanceArgs en_args;
    auto* en_cmd = app.add_subcommand("enhance", "enhance contrast via Weber's-law operators");
    en_cmd->add_option("--method", en_args.method, "block|ed|obr")->required();
    en_cmd->add_option("--block-w", en_args.block_w, "block width (block method)");
    en_cmd->add_option("--block-h", en_args.block_h, "block height (block method)");
    en_cmd->add_option("--mu", en_args.mu, "structuring element scale (ed/obr)");
    en_cmd->add_flag("--json", en_args.json, "emit stats as JSON");
    en_cmd->add_flag("--dump-intermediates", en_args.dump_intermediates,
                     "also write eroded/dilated/opened/closed/background panels");
    en_cmd->add_option("input", en_args.input)->required();
    en_cmd->add_option("output", en_args.output)->required();

    BenchArgs bench_args;
    auto* bench_cmd = app.add_subcommand("bench", "time the morphology kernels (CSV to stdout)");
    bench_cmd->add_option("--size", bench_args.sizes, "square image sizes")
        ->required()
        ->delimiter(',');
    bench_cmd->add_option("--mu-list", bench_args.mus, "scales to time")
        ->required()
        ->delimiter(',');
    bench_cmd->add_option("--impl", bench_args.impls, "implementations to time")
        ->required()
        ->delimiter(',');
    bench_cmd->add_option("--reps", bench_args.reps, "repetitions per cell (default 5)")
        ->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
        if (morph_cmd->parsed()) return run_morph(morph_args);
        if (bg_cmd->parsed()) return run_background(bg_args);
        if (en_cmd->parsed()) return run_enhance(en_args);
        return run_bench(bench_args);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::Error& e) {
        app.exit(e);
        return 2;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
