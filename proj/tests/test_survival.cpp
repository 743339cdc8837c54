#include <catch2/catch_amalgamated.hpp>

#include <bit>
#include <cmath>
#include <cstdint>
#include <random>
#include <set>

#include "screedsolo/payload_codec.hpp"
#include "screedsolo/survival.hpp"

using namespace screedsolo;

namespace {

// Brute force over all 2^n flip patterns at p = 1/2.
double brute_force_survival(std::uint64_t n, std::uint64_t k) {
    const std::uint64_t tau = survival_threshold(n, k);
    std::uint64_t hits = 0;
    const std::uint64_t patterns = std::uint64_t{1} << n;
    for (std::uint64_t pattern = 0; pattern < patterns; ++pattern) {
        const std::uint64_t survivors = n - static_cast<std::uint64_t>(std::popcount(pattern));
        hits += survivors >= tau;
    }
    return static_cast<double>(hits) / static_cast<double>(patterns);
}

} // namespace

TEST_CASE("survival probability matches exhaustive enumeration for n <= 12") {
    for (std::uint64_t n = 1; n <= 12; ++n)
        for (std::uint64_t k = 0; k <= n; ++k) {
            const SurvivalQuery q{n, k, 0, 0.5};
            const double closed = survival_probability(q);
            const double brute = brute_force_survival(n, k);
            REQUIRE(closed == Catch::Approx(brute).margin(1e-12));
        }
}

TEST_CASE("no-parity case collapses to two to the minus n, exactly") {
    for (std::uint64_t n = 1; n <= 60; ++n) {
        const SurvivalQuery q{n, n, 0, 0.5};
        REQUIRE(survival_probability(q) == std::exp2(-static_cast<double>(n)));
    }
}

TEST_CASE("hand-enumerated case n=4 k=2") {
    // tau = 3; patterns with >= 3 survivors: C(4,3) + C(4,4) = 5 of 16
    const SurvivalQuery q{4, 2, 0, 0.5};
    CHECK(survival_probability(q) == Catch::Approx(0.3125).margin(1e-15));
}

TEST_CASE("degenerate flip probabilities") {
    CHECK(survival_probability({100, 50, 0, 0.0}) == 1.0);
    CHECK(survival_probability({100, 50, 0, 1.0}) == 0.0);
    CHECK(survival_probability({0, 0, 0, 0.5}) == 1.0);
}

TEST_CASE("survival probability agrees with an independent binomial tail") {
    // frozen from scipy.stats.binom.sf
    CHECK(survival_probability({100, 60, 0, 0.5}) ==
          Catch::Approx(5.579544528625976e-10).epsilon(1e-9));
    CHECK(survival_probability({1000, 500, 0, 0.5}) ==
          Catch::Approx(6.738128253015444e-59).epsilon(1e-9));
    CHECK(survival_probability({10000, 2000, 0, 0.5}) ==
          Catch::Approx(8.702158206134146e-90).epsilon(1e-8));
    CHECK(survival_probability({500, 300, 0, 0.1}) ==
          Catch::Approx(0.9999999999921443).epsilon(1e-12));
    CHECK(survival_probability({500, 300, 0, 0.45}) ==
          Catch::Approx(8.573989402934718e-32).epsilon(1e-9));
}

TEST_CASE("normal approximation tracks the exact tail for large n") {
    const SurvivalQuery q{10000, 200, 0, 0.5};
    const double exact = survival_probability(q, SurvivalMode::Exact);
    const double approx = survival_probability(q, SurvivalMode::Normal);
    CHECK(exact == Catch::Approx(0.023292763852473638).epsilon(1e-10));  // scipy binom.sf
    CHECK(approx == Catch::Approx(exact).epsilon(1e-3));

    // auto mode switches to the approximation above 10^4
    CHECK(survival_probability({100'000, 0, 0, 0.5}) ==
          Catch::Approx(0.5012615631070979).epsilon(1e-3));
    const double big = survival_probability({100'000'000, 50'000'000, 0, 0.5});
    CHECK(big >= 0.0);
    CHECK(big <= 1.0);
}

TEST_CASE("survival probability is monotone in k and in flip probability") {
    const std::uint64_t n = 64;
    double prev = 1.1;
    for (std::uint64_t k = 0; k <= n; k += 4) {
        const double p = survival_probability({n, k, 0, 0.5});
        REQUIRE(p <= prev + 1e-15);
        prev = p;
    }
    prev = 1.1;
    for (double fp = 0.0; fp <= 1.0; fp += 0.05) {
        const double p = survival_probability({n, 32, 0, fp});
        REQUIRE(p <= prev + 1e-12);
        prev = p;
    }
}

TEST_CASE("probability stays within [0,1] under fuzzing") {
    std::mt19937_64 rng(515);
    for (int trial = 0; trial < 3000; ++trial) {
        const std::uint64_t n = 1 + rng() % 5000;
        const std::uint64_t k = rng() % (n + 1);
        const double fp = static_cast<double>(rng() % 10001) / 10000.0;
        const double p = survival_probability({n, k, 0, fp});
        REQUIRE(p >= 0.0);
        REQUIRE(p <= 1.0);
    }
}

TEST_CASE("corruption budget") {
    CHECK(corruption_budget(255 * 8, 223 * 8) == 128);
    CHECK(corruption_budget(100, 100) == 0);
    CHECK(corruption_budget(9, 4) == 2);
    CHECK_THROWS_AS(corruption_budget(4, 9), InvalidQuery);
}

TEST_CASE("query validation") {
    CHECK_THROWS_AS(survival_probability({10, 20, 0, 0.5}), InvalidQuery);
    CHECK_THROWS_AS(survival_probability({10, 5, 5, 0.5}), InvalidQuery);  // n > capacity
    CHECK_THROWS_AS(survival_probability({10, 5, 0, 1.5}), InvalidQuery);
    CHECK_THROWS_AS(survival_probability({10, 5, 0, -0.5}), InvalidQuery);
    CHECK_THROWS_AS(log2_position_multiplicity(10, 20), InvalidQuery);
}

TEST_CASE("position multiplicity diagnostic") {
    CHECK(log2_position_multiplicity(100, 0) == 0.0);
    CHECK(log2_position_multiplicity(100, 100) == 0.0);
    CHECK(log2_position_multiplicity(4, 2) == Catch::Approx(std::log2(6.0)).epsilon(1e-12));
    // C(786432, 3) = 786432*786431*786430/6
    const double expect = std::log2(786432.0) + std::log2(786431.0) + std::log2(786430.0) -
                          std::log2(6.0);
    CHECK(log2_position_multiplicity(786432, 3) == Catch::Approx(expect).epsilon(1e-9));
}

TEST_CASE("corruption within budget: parity condition holds and decode succeeds") {
    std::mt19937_64 rng(2468);
    const RsParams rs = rs_default_params();
    const auto payload = std::vector<std::uint8_t>(700, 0x42);
    const auto env = make_text_envelope(payload);
    const BitStream bits = encode_payload(env, "joint", rs, 0ULL, {{}});

    PixelImage cover = PixelImage::create(128, 128, 3);
    for (auto& s : cover.samples)
        s = static_cast<std::uint8_t>(rng());
    const PixelImage stego = embed(cover, bits);

    const std::uint64_t n = bits.size();
    const std::uint64_t k = 32 + 8 * rs_input_length_for(env);  // header + message bits
    const std::uint64_t budget = corruption_budget(n, k);

    // flip <= t coded bytes per block, one bit each: realized bit errors stay
    // far below the Eq.-8 style budget and within per-block correctability
    PixelImage attacked = stego;
    const std::size_t coded_bytes = (static_cast<std::size_t>(n) - 32) / 8;
    std::uint64_t flipped = 0;
    for (std::size_t block_off = 0; block_off < coded_bytes; block_off += 255) {
        const std::size_t block_len = std::min<std::size_t>(255, coded_bytes - block_off);
        std::set<std::size_t> bytes;
        while (bytes.size() < 8)
            bytes.insert(block_off + rng() % block_len);
        for (std::size_t byte : bytes) {
            attacked.samples[32 + 8 * byte + rng() % 8] ^= 1;
            ++flipped;
        }
    }
    REQUIRE(flipped <= budget);

    const auto check = parity_consistency_check(stego, attacked, n, k);
    CHECK(check.survivor_count == n - flipped);
    CHECK(check.necessary_condition_met);

    const auto decoded = decode_payload(extract_framed(attacked), "joint", rs);
    CHECK(reconstruct_text(decoded) == payload);
}

TEST_CASE("parity consistency check") {
    PixelImage cover = PixelImage::create(16, 16, 1);
    std::mt19937_64 rng(77);
    for (auto& s : cover.samples)
        s = static_cast<std::uint8_t>(rng());

    const std::uint64_t n = 200, k = 120;

    SECTION("identical images: every bit survives") {
        const auto r = parity_consistency_check(cover, cover, n, k);
        CHECK(r.survivor_count == n);
        CHECK(r.threshold == (n + k + 1) / 2);
        CHECK(r.necessary_condition_met);
    }
    SECTION("all LSBs flipped: nothing survives") {
        PixelImage attacked = cover;
        for (auto& s : attacked.samples)
            s ^= 1;
        const auto r = parity_consistency_check(cover, attacked, n, k);
        CHECK(r.survivor_count == 0);
        CHECK_FALSE(r.necessary_condition_met);
    }
    SECTION("random half flipped: condition unmet for k > 0") {
        PixelImage attacked = cover;
        for (std::uint64_t i = 0; i < n; ++i)
            if (rng() & 1)
                attacked.samples[static_cast<std::size_t>(i)] ^= 1;
        const auto r = parity_consistency_check(cover, attacked, n, k);
        CHECK(std::abs(static_cast<double>(r.survivor_count) - static_cast<double>(n) / 2.0) <
              3.0 * std::sqrt(static_cast<double>(n)) / 2.0);
        CHECK_FALSE(r.necessary_condition_met);
    }
    SECTION("shape and query validation") {
        const PixelImage other = PixelImage::create(8, 8, 1);
        CHECK_THROWS_AS(parity_consistency_check(cover, other, n, k), ShapeMismatch);
        CHECK_THROWS_AS(parity_consistency_check(cover, cover, 1000, 0), InvalidQuery);
    }
}
