#include <catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "lumorph/enhance.hpp"
#include "lumorph/io.hpp"
#include "lumorph/morphology.hpp"
#include "support.hpp"

using namespace lumorph;
namespace fs = std::filesystem;

namespace {

const std::string kCli = LUMORPH_CLI_PATH;

fs::path tmp_dir() {
    static const fs::path dir = [] {
        auto d = fs::temp_directory_path() / "lumorph_cli_tests";
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

int run(const std::string& args, const std::string& stdout_file = "/dev/null") {
    const std::string cmd = kCli + " " + args + " >" + stdout_file + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    return WEXITSTATUS(status);
}

std::string read_bytes(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

fs::path write_test_image(const GrayImage& img, const std::string& name) {
    const auto p = tmp_dir() / name;
    write_image(img, p.string(), ImageFormat::PgmBinary);
    return p;
}

}  // namespace

TEST_CASE("cli morph matches library calls byte for byte") {
    std::mt19937 rng(71);
    const GrayImage f = oracle::random_image(rng, 24, 24);
    const auto in = write_test_image(f, "morph_in.pgm");

    struct Case {
        const char* op;
        int mu;
        GrayImage expected;
    };
    const Case cases[] = {
        {"erode", 0, f},
        {"erode", 2, erode(f, 2)},
        {"dilate", 3, dilate(f, 3)},
        {"open", 1, open(f, 1)},
        {"close", 1, close(f, 1)},
        {"open-rec", 2, opening_by_reconstruction(f, 2)},
        {"close-rec", 2, closing_by_reconstruction(f, 2)},
    };
    for (const auto& c : cases) {
        const auto out = tmp_dir() / (std::string("morph_") + c.op + ".pgm");
        REQUIRE(run("morph --op " + std::string(c.op) + " --mu " + std::to_string(c.mu) + " " +
                    in.string() + " " + out.string()) == 0);
        REQUIRE(std::get<GrayImage>(read_image(out.string())) == c.expected);
    }

    // naive impl produces identical files
    const auto out_n = tmp_dir() / "morph_naive.pgm";
    const auto out_s = tmp_dir() / "morph_sep.pgm";
    REQUIRE(run("morph --op erode --mu 2 --impl naive " + in.string() + " " + out_n.string()) == 0);
    REQUIRE(run("morph --op erode --mu 2 --impl separable " + in.string() + " " + out_s.string()) == 0);
    CHECK(read_bytes(out_n) == read_bytes(out_s));
}

TEST_CASE("cli morph composition through files equals in-memory composition") {
    std::mt19937 rng(72);
    const GrayImage f = oracle::random_image(rng, 16, 16);
    const auto in = write_test_image(f, "comp_in.pgm");
    const auto mid = tmp_dir() / "comp_mid.pgm";
    const auto out = tmp_dir() / "comp_out.pgm";
    REQUIRE(run("morph --op close --mu 1 " + in.string() + " " + mid.string()) == 0);
    REQUIRE(run("morph --op open --mu 1 " + mid.string() + " " + out.string()) == 0);
    CHECK(std::get<GrayImage>(read_image(out.string())) == open(close(f, 1), 1));
}

TEST_CASE("cli morph error handling") {
    const auto in = write_test_image(GrayImage(4, 4, 1), "err_in.pgm");
    CHECK(run("morph --op sharpen --mu 1 " + in.string() + " /tmp/x.pgm") == 2);
    CHECK(run("morph --op erode " + in.string() + " /tmp/x.pgm") == 2);  // missing --mu
    CHECK(run("morph --op erode --mu 1 " + (tmp_dir() / "no_such.pgm").string() + " /tmp/x.pgm") ==
          1);
}

TEST_CASE("cli background writes tau, bg and gain sidecar") {
    const auto in = write_test_image(GrayImage(6, 6, 80), "bg_const.pgm");
    const auto prefix = (tmp_dir() / "bg_const_out").string();
    REQUIRE(run("background --method ed --mu 2 " + in.string() + " " + prefix) == 0);
    CHECK(std::get<GrayImage>(read_image(prefix + "_tau.pgm")) == GrayImage(6, 6, 80));
    CHECK(std::get<GrayImage>(read_image(prefix + "_bg.pgm")) == GrayImage(6, 6, 80));
    std::ifstream gain(prefix + "_gain.txt");
    REQUIRE(gain.good());
    double v;
    int count = 0;
    while (gain >> v) {
        CHECK_THAT(v, Catch::Matchers::WithinAbs((255.0 - 80.0) / std::log(256.0), 5e-7));
        ++count;
    }
    CHECK(count == 36);
}

TEST_CASE("cli background parity with the library") {
    std::mt19937 rng(73);
    const GrayImage f = oracle::random_image(rng, 20, 20);
    const auto in = write_test_image(f, "bg_rand.pgm");

    const auto prefix = (tmp_dir() / "bg_rand_out").string();
    REQUIRE(run("background --method ed --mu 2 " + in.string() + " " + prefix) == 0);
    const BackgroundMap bg = tau_erosion_dilation(f, 2);
    CHECK(std::get<GrayImage>(read_image(prefix + "_tau.pgm")) == clamp_round(bg.tau));
    CHECK(std::get<GrayImage>(read_image(prefix + "_bg.pgm")) == bg.background);

    const auto prefix2 = (tmp_dir() / "bg_obr0").string();
    REQUIRE(run("background --method obr --mu 0 " + in.string() + " " + prefix2) == 0);
    CHECK(std::get<GrayImage>(read_image(prefix2 + "_tau.pgm")) == f);

    // block method requires block dimensions
    CHECK(run("background --method block " + in.string() + " " + prefix) == 2);
    CHECK(run("background --method bogus --mu 1 " + in.string() + " " + prefix) == 2);
}

TEST_CASE("cli enhance parity and stats output") {
    std::mt19937 rng(74);
    const GrayImage f = oracle::random_image(rng, 24, 24);
    const auto in = write_test_image(f, "enh_in.pgm");

    struct Case {
        std::string flags;
        GrayImage expected;
    };
    const Case cases[] = {
        {"--method block --block-w 8 --block-h 8", enhance_block(f, 8, 8)},
        {"--method ed --mu 2", enhance_erosion_dilation(f, 2)},
        {"--method obr --mu 2", enhance_obr(f, 2)},
    };
    int idx = 0;
    for (const auto& c : cases) {
        const auto out = tmp_dir() / ("enh_out" + std::to_string(idx) + ".pgm");
        const auto stats = tmp_dir() / ("enh_stats" + std::to_string(idx) + ".txt");
        REQUIRE(run("enhance " + c.flags + " " + in.string() + " " + out.string(),
                    stats.string()) == 0);
        REQUIRE(std::get<GrayImage>(read_image(out.string())) == c.expected);
        const std::string text = read_bytes(stats);
        CHECK(text.find("mean_before=") != std::string::npos);
        CHECK(text.find("clipped_fraction=") != std::string::npos);
        ++idx;
    }
}

TEST_CASE("cli enhance constant-zero input stays fixed with no clipping") {
    const auto in = write_test_image(GrayImage(8, 8, 0), "enh_zero.pgm");
    const auto out = tmp_dir() / "enh_zero_out.pgm";
    const auto stats = tmp_dir() / "enh_zero_stats.json";
    REQUIRE(run("enhance --method obr --mu 2 --json " + in.string() + " " + out.string(),
                stats.string()) == 0);
    CHECK(std::get<GrayImage>(read_image(out.string())) == GrayImage(8, 8, 0));
    const std::string text = read_bytes(stats);
    CHECK(text.find("\"clipped_fraction\":0.0") != std::string::npos);
}

TEST_CASE("cli enhance dump-intermediates writes the panel set") {
    std::mt19937 rng(75);
    const GrayImage f = oracle::random_image(rng, 16, 16);
    const auto in = write_test_image(f, "panels_in.pgm");
    const auto out = tmp_dir() / "panels_out.pgm";
    REQUIRE(run("enhance --method ed --mu 2 --dump-intermediates " + in.string() + " " +
                out.string()) == 0);
    const std::string stem = (tmp_dir() / "panels_out").string();
    CHECK(std::get<GrayImage>(read_image(stem + "_eroded.pgm")) == erode(f, 2));
    CHECK(std::get<GrayImage>(read_image(stem + "_dilated.pgm")) == dilate(f, 2));
    CHECK(std::get<GrayImage>(read_image(stem + "_opened.pgm")) == open(f, 2));
    CHECK(std::get<GrayImage>(read_image(stem + "_closed.pgm")) == close(f, 2));
    CHECK(std::get<GrayImage>(read_image(stem + "_gray.pgm")) == f);
    CHECK(fs::exists(stem + "_background.pgm"));
}

TEST_CASE("cli enhance color input goes through the per-channel path") {
    std::mt19937 rng(76);
    const RgbImage rgb(oracle::random_image(rng, 12, 12), oracle::random_image(rng, 12, 12),
                       oracle::random_image(rng, 12, 12));
    const auto in = tmp_dir() / "color_in.ppm";
    write_image(rgb, in.string(), ImageFormat::PpmBinary);
    const auto out = tmp_dir() / "color_out.ppm";
    REQUIRE(run("enhance --method block --block-w 6 --block-h 6 " + in.string() + " " +
                out.string()) == 0);
    CHECK(std::get<RgbImage>(read_image(out.string())) ==
          enhance_rgb(rgb, EnhanceMethod::block(6, 6)));
}

TEST_CASE("cli bench emits the documented CSV") {
    const auto csv = tmp_dir() / "bench.csv";
    REQUIRE(run("bench --size 64 --mu-list 1 --impl naive,separable --reps 1", csv.string()) == 0);
    std::ifstream in(csv);
    std::string header;
    std::getline(in, header);
    CHECK(header == "op,impl,size,mu,rep,millis");
    int rows = 0;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        ++rows;
        const auto last = line.rfind(',');
        const double ms = std::stod(line.substr(last + 1));
        REQUIRE(ms >= 0.0);
        REQUIRE(std::isfinite(ms));
    }
    CHECK(rows == 4);  // (erode, dilate) x (naive, separable)

    CHECK(run("bench --size 0 --mu-list 1 --impl naive") == 2);
    CHECK(run("bench --mu-list 1 --impl naive") == 2);
}
