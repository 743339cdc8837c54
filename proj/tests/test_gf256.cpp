#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <random>
#include <vector>

#include "screedsolo/gf256.hpp"

using namespace screedsolo;

TEST_CASE("gf256 multiplication spot values") {
    CHECK(gf::mul(0, 7) == 0);
    CHECK(gf::mul(7, 0) == 0);
    CHECK(gf::mul(2, 3) == 6);     // x * (x+1) = x^2 + x, no reduction
    CHECK(gf::mul(128, 2) == 29);  // wraps through the field polynomial 0x11D
    CHECK(gf::mul(1, 255) == 255);
}

TEST_CASE("gf256 table multiplication matches the peasant route exhaustively") {
    for (unsigned a = 0; a < 256; ++a)
        for (unsigned b = 0; b < 256; ++b)
            REQUIRE(gf::mul(static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b)) ==
                    gf::mul_peasant(static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b)));
}

TEST_CASE("gf256 commutativity over all pairs") {
    for (unsigned a = 0; a < 256; ++a)
        for (unsigned b = a; b < 256; ++b)
            REQUIRE(gf::mul(static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b)) ==
                    gf::mul(static_cast<std::uint8_t>(b), static_cast<std::uint8_t>(a)));
}

TEST_CASE("gf256 associativity and distributivity on a spot set") {
    const std::vector<std::uint8_t> spots = {0, 1, 2, 3, 29, 64, 127, 128, 142, 200, 253, 254, 255};
    for (std::uint8_t a : spots)
        for (unsigned b = 0; b < 256; ++b)
            for (std::uint8_t c : spots) {
                const auto bb = static_cast<std::uint8_t>(b);
                REQUIRE(gf::mul(gf::mul(a, bb), c) == gf::mul(a, gf::mul(bb, c)));
                REQUIRE(gf::mul(a, static_cast<std::uint8_t>(bb ^ c)) ==
                        (gf::mul(a, bb) ^ gf::mul(a, c)));
            }
}

TEST_CASE("gf256 inverses for every nonzero element") {
    for (unsigned a = 1; a < 256; ++a) {
        const auto aa = static_cast<std::uint8_t>(a);
        REQUIRE(gf::mul(aa, gf::inv(aa)) == 1);
        REQUIRE(gf::div(1, aa) == gf::inv(aa));
        REQUIRE(gf::div(aa, aa) == 1);
    }
}

TEST_CASE("gf256 exp/log tables are mutually consistent") {
    for (unsigned a = 1; a < 256; ++a)
        REQUIRE(gf::exp_at(gf::log_at(static_cast<std::uint8_t>(a))) == a);
    for (int i = 0; i < 255; ++i)
        REQUIRE(gf::log_at(gf::exp_at(i)) == i);
    // alpha = 2 generates the multiplicative group
    CHECK(gf::exp_at(0) == 1);
    CHECK(gf::exp_at(1) == 2);
    CHECK(gf::exp_at(255) == 1);
}

TEST_CASE("gf256 pow agrees with repeated multiplication") {
    for (unsigned a = 0; a < 256; a += 3) {
        std::uint8_t acc = 1;
        for (unsigned e = 0; e < 20; ++e) {
            REQUIRE(gf::pow(static_cast<std::uint8_t>(a), e) == acc);
            acc = gf::mul(acc, static_cast<std::uint8_t>(a));
        }
    }
}

namespace {

// Lagrange interpolation over GF(256); returns coefficients low-first.
std::vector<std::uint8_t> lagrange_interpolate(const std::vector<std::uint8_t>& xs,
                                               const std::vector<std::uint8_t>& ys) {
    const std::size_t k = xs.size();
    std::vector<std::uint8_t> coeffs(k, 0);
    for (std::size_t i = 0; i < k; ++i) {
        // basis_i(x) = prod_{j != i} (x - x_j) / (x_i - x_j)
        std::vector<std::uint8_t> basis{1};
        std::uint8_t denom = 1;
        for (std::size_t j = 0; j < k; ++j) {
            if (j == i)
                continue;
            std::vector<std::uint8_t> next(basis.size() + 1, 0);
            for (std::size_t d = 0; d < basis.size(); ++d) {
                next[d + 1] ^= basis[d];                 // * x
                next[d] ^= gf::mul(basis[d], xs[j]);     // * x_j (char 2: minus == plus)
            }
            basis = std::move(next);
            denom = gf::mul(denom, static_cast<std::uint8_t>(xs[i] ^ xs[j]));
        }
        const std::uint8_t scale = gf::div(ys[i], denom);
        for (std::size_t d = 0; d < basis.size(); ++d)
            coeffs[d] ^= gf::mul(basis[d], scale);
    }
    return coeffs;
}

std::uint8_t eval_low_first(const std::vector<std::uint8_t>& coeffs, std::uint8_t x) {
    std::uint8_t acc = 0;
    for (std::size_t d = coeffs.size(); d-- > 0;)
        acc = static_cast<std::uint8_t>(gf::mul(acc, x) ^ coeffs[d]);
    return acc;
}

} // namespace

TEST_CASE("polynomial through k points is reproduced exactly by interpolation") {
    // The uniqueness property a Reed-Solomon code rests on: k point-value
    // pairs pin down one polynomial of degree < k.
    std::mt19937_64 rng(20240601);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t k = 2 + static_cast<std::size_t>(rng() % 12);
        std::vector<std::uint8_t> xs, ys;
        for (std::size_t i = 0; i < k; ++i) {
            xs.push_back(gf::exp_at(static_cast<int>(i)));  // distinct points
            ys.push_back(static_cast<std::uint8_t>(rng() % 256));
        }
        const auto coeffs = lagrange_interpolate(xs, ys);
        REQUIRE(coeffs.size() == k);  // degree < k
        for (std::size_t i = 0; i < k; ++i)
            REQUIRE(eval_low_first(coeffs, xs[i]) == ys[i]);
    }
}
