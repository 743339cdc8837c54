#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include <json.hpp>

#include "screedsolo/digest.hpp"
#include "screedsolo/image.hpp"
#include "screedsolo/png_io.hpp"

using namespace screedsolo;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string cli_path() {
    const char* env = std::getenv("SCREEDSOLO_CLI");
    REQUIRE(env != nullptr);
    return env;
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("screedsolo_cli_test_" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

int run(const std::string& command) {
    const int status = std::system(command.c_str());
    REQUIRE(status != -1);
    return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void spit(const std::string& path, const std::string& data) {
    std::ofstream out(path, std::ios::binary);
    out << data;
    REQUIRE(out.good());
}

PixelImage noisy_cover(int w, int h, int c, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    PixelImage img = PixelImage::create(w, h, c);
    for (auto& s : img.samples)
        s = static_cast<std::uint8_t>(rng());
    return img;
}

} // namespace

TEST_CASE("cli hide/reveal round-trips a text payload") {
    TempDir dir;
    write_png(noisy_cover(128, 128, 3, 1), dir.file("cover.png"));
    spit(dir.file("secret.txt"), "meet me at the usual place at nine\n");

    const std::string env = "SCREEDSOLO_PASSWORD='open sesame' ";
    REQUIRE(run(env + cli_path() + " hide --cover " + dir.file("cover.png") + " --payload " +
                dir.file("secret.txt") + " --out " + dir.file("stego.png") + " --report " +
                dir.file("hide.json") + " > /dev/null") == 0);
    REQUIRE(run(env + cli_path() + " reveal --stego " + dir.file("stego.png") + " --out " +
                dir.file("revealed.txt") + " > /dev/null") == 0);
    CHECK(slurp(dir.file("revealed.txt")) == slurp(dir.file("secret.txt")));

    const json report = json::parse(slurp(dir.file("hide.json")));
    CHECK(report["capacity_bits"] == 128 * 128 * 3);
    CHECK(report["fidelity"]["mse"] <= 1.0);
    // secrets never land in reports
    CHECK(report.dump().find("sesame") == std::string::npos);
}

TEST_CASE("cli reveal with the wrong password exits with the auth code") {
    TempDir dir;
    write_png(noisy_cover(96, 96, 3, 2), dir.file("cover.png"));
    spit(dir.file("secret.txt"), "classified");

    REQUIRE(run("SCREEDSOLO_PASSWORD=right " + cli_path() + " hide --cover " +
                dir.file("cover.png") + " --payload " + dir.file("secret.txt") + " --out " +
                dir.file("stego.png") + " > /dev/null") == 0);
    CHECK(run("SCREEDSOLO_PASSWORD=wrong " + cli_path() + " reveal --stego " +
              dir.file("stego.png") + " --out " + dir.file("out.txt") +
              " > /dev/null 2>&1") == 5);
    CHECK_FALSE(fs::exists(dir.file("out.txt")));  // no partial output
}

TEST_CASE("cli hide rejects an oversized payload with the capacity code") {
    TempDir dir;
    write_png(noisy_cover(16, 16, 1, 3), dir.file("tiny.png"));
    spit(dir.file("big.txt"), std::string(4096, 'x'));

    CHECK(run("SCREEDSOLO_PASSWORD=pw " + cli_path() + " hide --cover " + dir.file("tiny.png") +
              " --payload " + dir.file("big.txt") + " --out " + dir.file("stego.png") +
              " > /dev/null 2>" + dir.file("err.txt")) == 2);
    const std::string err = slurp(dir.file("err.txt"));
    CHECK(err.find("256") != std::string::npos);  // available capacity named
}

TEST_CASE("cli hide is byte-identical under pinned timestamp and iv") {
    TempDir dir;
    write_png(noisy_cover(64, 64, 3, 4), dir.file("cover.png"));
    spit(dir.file("secret.txt"), "determinism");

    const std::string common = "SCREEDSOLO_PASSWORD=pw " + cli_path() + " hide --cover " +
                               dir.file("cover.png") + " --payload " + dir.file("secret.txt") +
                               " --timestamp 1700000000 --iv 000102030405060708090a0b0c0d0e0f";
    REQUIRE(run(common + " --out " + dir.file("a.png") + " > /dev/null") == 0);
    REQUIRE(run(common + " --out " + dir.file("b.png") + " > /dev/null") == 0);
    CHECK(slurp(dir.file("a.png")) == slurp(dir.file("b.png")));
}

TEST_CASE("cli reveal refuses a non-PNG carrier") {
    TempDir dir;
    spit(dir.file("fake.jpg"), "\xFF\xD8\xFF\xE0 definitely a jpeg");
    CHECK(run("SCREEDSOLO_PASSWORD=pw " + cli_path() + " reveal --stego " + dir.file("fake.jpg") +
              " --out " + dir.file("out.bin") + " > /dev/null 2>&1") == 6);
}

TEST_CASE("cli evaluate emits the identity report for identical files") {
    TempDir dir;
    write_png(noisy_cover(48, 48, 3, 5), dir.file("x.png"));
    REQUIRE(run(cli_path() + " evaluate --a " + dir.file("x.png") + " --b " + dir.file("x.png") +
                " > " + dir.file("eval.json")) == 0);
    const json doc = json::parse(slurp(dir.file("eval.json")));
    CHECK(doc["fidelity"]["mse"] == 0.0);
    CHECK(doc["fidelity"]["psnr_db"] == "inf");
    CHECK(doc["fidelity"]["ssim"] == Catch::Approx(1.0).margin(1e-9));
}

TEST_CASE("cli evaluate exits with the shape code on mismatched dimensions") {
    TempDir dir;
    write_png(noisy_cover(32, 32, 3, 6), dir.file("a.png"));
    write_png(noisy_cover(32, 16, 3, 7), dir.file("b.png"));
    CHECK(run(cli_path() + " evaluate --a " + dir.file("a.png") + " --b " + dir.file("b.png") +
              " > /dev/null 2>&1") == 8);
}

TEST_CASE("cli capacity reports the sample count") {
    TempDir dir;
    write_png(noisy_cover(100, 50, 3, 8), dir.file("img.png"));
    REQUIRE(run(cli_path() + " capacity --image " + dir.file("img.png") + " > " +
                dir.file("cap.json")) == 0);
    const json doc = json::parse(slurp(dir.file("cap.json")));
    CHECK(doc["capacity_bits"] == 100 * 50 * 3);
}

TEST_CASE("cli attack: zero-strength noise leaves the file equivalent") {
    TempDir dir;
    write_png(noisy_cover(64, 64, 3, 9), dir.file("in.png"));
    REQUIRE(run(cli_path() + " attack --in " + dir.file("in.png") + " --out " +
                dir.file("out.png") + " --noise salt-pepper --salt 0 --pepper 0 > " +
                dir.file("attack.json")) == 0);
    const json doc = json::parse(slurp(dir.file("attack.json")));
    CHECK(doc["lsb_flip_rate"] == 0.0);
    CHECK(doc["fidelity"]["mse"] == 0.0);
    CHECK(read_png(dir.file("out.png")) == read_png(dir.file("in.png")));
}

TEST_CASE("cli attack presets run and report the flip rate") {
    TempDir dir;
    write_png(noisy_cover(64, 64, 3, 10), dir.file("in.png"));
    REQUIRE(run(cli_path() + " attack --in " + dir.file("in.png") + " --out " +
                dir.file("out.png") + " --preset salt-pepper-0.03 --seed 42 > " +
                dir.file("attack.json")) == 0);
    const json doc = json::parse(slurp(dir.file("attack.json")));
    CHECK(doc["noise"]["kind"] == "salt-pepper");
    CHECK(doc["lsb_flip_rate"].get<double>() > 0.0);

    CHECK(run(cli_path() + " attack --in " + dir.file("in.png") + " --out " + dir.file("o.png") +
              " --preset bogus > /dev/null 2>&1") == 7);
}

TEST_CASE("cli survival prints the probability and diagnostics") {
    TempDir dir;
    REQUIRE(run(cli_path() + " survival --n 4 --k 2 --capacity 786432 > " +
                dir.file("sv.json")) == 0);
    const json doc = json::parse(slurp(dir.file("sv.json")));
    CHECK(doc["survival_probability"] == Catch::Approx(0.3125).margin(1e-12));
    CHECK(doc["threshold"] == 3);
    CHECK(doc["corruption_budget"] == 1);
    CHECK(doc["log2_position_multiplicity"].get<double>() > 0.0);

    CHECK(run(cli_path() + " survival --n 4 --k 9 > /dev/null 2>&1") == 7);
}

TEST_CASE("cli round-trips an image payload through quantization") {
    TempDir dir;
    write_png(noisy_cover(200, 200, 3, 11), dir.file("cover.png"));
    write_png(noisy_cover(20, 20, 3, 12), dir.file("secret.png"));

    const std::string env = "SCREEDSOLO_PASSWORD=pw ";
    REQUIRE(run(env + cli_path() + " hide --cover " + dir.file("cover.png") +
                " --payload " + dir.file("secret.png") + " --kind image --quant-bits 5 --out " +
                dir.file("stego.png") + " > /dev/null") == 0);
    REQUIRE(run(env + cli_path() + " reveal --stego " + dir.file("stego.png") + " --out " +
                dir.file("revealed.png") + " > /dev/null") == 0);

    const PixelImage original = read_png(dir.file("secret.png"));
    const PixelImage revealed = read_png(dir.file("revealed.png"));
    REQUIRE(revealed.same_shape(original));
    for (std::size_t i = 0; i < original.samples.size(); ++i) {
        const int err = static_cast<int>(original.samples[i]) - revealed.samples[i];
        REQUIRE(err >= 0);
        REQUIRE(err < 8);  // 2^(8-5)
    }
}
