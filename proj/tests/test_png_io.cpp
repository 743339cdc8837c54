#include <catch2/catch_amalgamated.hpp>

#include <cstring>
#include <filesystem>
#include <random>
#include <vector>

#include <png.h>

#include "screedsolo/png_io.hpp"

using namespace screedsolo;

namespace {

PixelImage random_image(std::mt19937_64& rng, int w, int h, int c) {
    PixelImage img = PixelImage::create(w, h, c);
    for (auto& s : img.samples)
        s = static_cast<std::uint8_t>(rng());
    return img;
}

// Writes a PNG in an arbitrary simplified-API format, to build inputs the
// reader must refuse.
std::vector<std::uint8_t> write_raw_png(png_uint_32 format, int w, int h,
                                        const std::vector<std::uint8_t>& pixels) {
    png_image info;
    std::memset(&info, 0, sizeof info);
    info.version = PNG_IMAGE_VERSION;
    info.width = static_cast<png_uint_32>(w);
    info.height = static_cast<png_uint_32>(h);
    info.format = format;
    png_alloc_size_t size = 0;
    REQUIRE(png_image_write_to_memory(&info, nullptr, &size, 0, pixels.data(), 0, nullptr));
    std::vector<std::uint8_t> out(size);
    REQUIRE(png_image_write_to_memory(&info, out.data(), &size, 0, pixels.data(), 0, nullptr));
    out.resize(size);
    return out;
}

} // namespace

TEST_CASE("png round-trips grayscale and rgb byte-exactly") {
    std::mt19937_64 rng(606);
    for (int channels : {1, 3}) {
        const PixelImage img = random_image(rng, 37, 21, channels);
        const auto bytes = encode_png(img);
        const PixelImage back = decode_png(bytes);
        REQUIRE(back == img);
    }
}

TEST_CASE("png file round-trip") {
    std::mt19937_64 rng(607);
    const auto path = (std::filesystem::temp_directory_path() / "screedsolo_pngio_test.png").string();
    const PixelImage img = random_image(rng, 12, 34, 3);
    write_png(img, path);
    CHECK(read_png(path) == img);
    std::filesystem::remove(path);
}

TEST_CASE("png reader refuses alpha channels") {
    const std::vector<std::uint8_t> rgba(4 * 3 * 4, 128);
    const auto bytes = write_raw_png(PNG_FORMAT_RGBA, 4, 3, rgba);
    CHECK_THROWS_AS(decode_png(bytes), IoError);
}

TEST_CASE("png reader refuses 16-bit depth") {
    const std::vector<std::uint8_t> gray16(4 * 3 * 2, 1);
    const auto bytes = write_raw_png(PNG_FORMAT_LINEAR_Y, 4, 3, gray16);
    CHECK_THROWS_AS(decode_png(bytes), IoError);
}

TEST_CASE("png reader reports missing and corrupt inputs") {
    CHECK_THROWS_AS(read_png("/nonexistent/path.png"), IoError);
    const std::vector<std::uint8_t> garbage{'n', 'o', 't', ' ', 'a', ' ', 'p', 'n', 'g'};
    CHECK_THROWS_AS(decode_png(garbage), IoError);
}
