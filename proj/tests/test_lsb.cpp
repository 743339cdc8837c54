#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <random>

#include "screedsolo/lsb.hpp"

using namespace screedsolo;

namespace {

PixelImage random_image(std::mt19937_64& rng, int w, int h, int c) {
    PixelImage img = PixelImage::create(w, h, c);
    for (auto& s : img.samples)
        s = static_cast<std::uint8_t>(rng());
    return img;
}

BitStream random_bits(std::mt19937_64& rng, std::size_t n) {
    BitStream bits;
    for (std::size_t i = 0; i < n; ++i)
        bits.push_bit(rng() & 1);
    return bits;
}

} // namespace

TEST_CASE("capacity is one bit per channel sample") {
    CHECK(capacity_bits(PixelImage::create(512, 512, 3)) == 786'432);
    CHECK(capacity_bits(PixelImage::create(1, 1, 1)) == 1);

    // telescope-scale cover: enough room for a 95,783,936-bit frame
    PixelImage nircam;
    nircam.width = 14589;
    nircam.height = 8423;
    nircam.channels = 3;
    CHECK(capacity_bits(nircam) == 368'649'441ULL);
    CHECK(capacity_bits(nircam) >= 95'783'904ULL + 32ULL);
}

TEST_CASE("embed flips only disagreeing LSBs") {
    PixelImage cover = PixelImage::create(2, 1, 1);
    cover.samples = {200, 201};  // ...1000 and ...1001

    BitStream ones;
    ones.push_bit(true);
    ones.push_bit(true);
    const PixelImage stego = embed(cover, ones);
    CHECK(stego.samples[0] == 201);  // LSB differed: xor with 1
    CHECK(stego.samples[1] == 201);  // LSB matched: untouched
}

TEST_CASE("payload equal to the cover's LSB plane leaves the image identical") {
    std::mt19937_64 rng(1);
    const PixelImage cover = random_image(rng, 16, 8, 3);
    BitStream bits;
    for (std::size_t i = 0; i < 100; ++i)
        bits.push_bit(cover.samples[i] & 1);
    CHECK(embed(cover, bits) == cover);
}

TEST_CASE("extract inverts embed for random payloads") {
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 30; ++trial) {
        const PixelImage cover = random_image(rng, 32, 16, trial % 2 ? 3 : 1);
        const std::size_t n = rng() % (capacity_bits(cover) + 1);
        const BitStream payload = random_bits(rng, n);
        const PixelImage stego = embed(cover, payload);
        REQUIRE(extract(stego, n) == payload);
    }
}

TEST_CASE("per-sample change is at most one and the suffix is untouched") {
    std::mt19937_64 rng(3);
    const PixelImage cover = random_image(rng, 64, 32, 3);
    const std::size_t n = 1000;
    const PixelImage stego = embed(cover, random_bits(rng, n));
    for (std::size_t i = 0; i < cover.samples.size(); ++i) {
        const int diff = std::abs(static_cast<int>(cover.samples[i]) - stego.samples[i]);
        REQUIRE(diff <= 1);
        if (i >= n)
            REQUIRE(cover.samples[i] == stego.samples[i]);
    }
}

TEST_CASE("flip count behaves like a fair coin over the embedded region") {
    std::mt19937_64 rng(4);
    const PixelImage cover = random_image(rng, 200, 200, 3);
    const std::size_t n = 100'000;
    const PixelImage stego = embed(cover, random_bits(rng, n));
    std::size_t flips = 0;
    for (std::size_t i = 0; i < n; ++i)
        flips += cover.samples[i] != stego.samples[i];
    // Binomial(n, 1/2): mean n/2, sigma = sqrt(n)/2; allow 3 sigma
    const double sigma = std::sqrt(static_cast<double>(n)) / 2.0;
    CHECK(std::abs(static_cast<double>(flips) - static_cast<double>(n) / 2.0) < 3.0 * sigma);
}

TEST_CASE("embedding beyond capacity is rejected with both numbers") {
    const PixelImage cover = PixelImage::create(4, 4, 1);
    BitStream bits;
    for (int i = 0; i < 17; ++i)
        bits.push_bit(true);
    try {
        embed(cover, bits);
        FAIL("expected InsufficientCapacity");
    } catch (const InsufficientCapacity& e) {
        const std::string msg = e.what();
        CHECK(msg.find("17") != std::string::npos);
        CHECK(msg.find("16") != std::string::npos);
    }
}

TEST_CASE("framed extraction reads the header then the advertised payload") {
    std::mt19937_64 rng(5);
    const PixelImage cover = random_image(rng, 40, 10, 3);

    BitStream framed;
    framed.append_u32_be(800);
    const BitStream payload = random_bits(rng, 800);
    for (std::size_t i = 0; i < payload.size(); ++i)
        framed.push_bit(payload.bit(i));

    const PixelImage stego = embed(cover, framed);
    const BitStream back = extract_framed(stego);
    REQUIRE(back == framed);
}

TEST_CASE("framed extraction rejects a header that exceeds capacity") {
    std::mt19937_64 rng(6);
    PixelImage img = random_image(rng, 8, 8, 1);  // capacity 64

    BitStream header;
    header.append_u32_be(64);  // claims L == capacity; 32 header bits leave only 32
    img = embed(img, header);
    CHECK_THROWS_AS(extract_framed(img), FrameError);

    CHECK_THROWS_AS(extract(img, 65), FrameError);

    // an unmodified natural image extracts without error
    const PixelImage natural = random_image(rng, 8, 8, 1);
    CHECK(extract(natural, 64).size() == 64);
}
