#pragma once

#include <array>
#include <cassert>
#include <cstdint>
#include <span>

namespace screedsolo::gf {

// Arithmetic over GF(2^8) with field polynomial x^8+x^4+x^3+x^2+1 (0x11D)
// and generator element alpha = 2. Addition is XOR; multiplication goes
// through exp/log tables built at compile time.
inline constexpr unsigned kFieldPoly = 0x11D;

// Carry-less multiply with explicit reduction, no tables. Slow; used to
// build the tables and by tests as an independent route.
constexpr std::uint8_t mul_peasant(std::uint8_t a, std::uint8_t b) noexcept {
    unsigned acc = 0;
    unsigned aa = a;
    for (unsigned bb = b; bb != 0; bb >>= 1) {
        if (bb & 1)
            acc ^= aa;
        aa <<= 1;
        if (aa & 0x100)
            aa ^= kFieldPoly;
    }
    return static_cast<std::uint8_t>(acc);
}

namespace detail {

struct Tables {
    // exp is doubled so that exp[log_a + log_b] never needs a mod 255.
    std::array<std::uint8_t, 512> exp{};
    std::array<std::uint8_t, 256> log{};
};

constexpr Tables make_tables() noexcept {
    Tables t{};
    std::uint8_t x = 1;
    for (int i = 0; i < 255; ++i) {
        t.exp[static_cast<std::size_t>(i)] = x;
        t.log[x] = static_cast<std::uint8_t>(i);
        x = mul_peasant(x, 2);
    }
    for (int i = 255; i < 512; ++i)
        t.exp[static_cast<std::size_t>(i)] = t.exp[static_cast<std::size_t>(i - 255)];
    return t;
}

inline constexpr Tables tables = make_tables();

} // namespace detail

// alpha^power for 0 <= power <= 509.
constexpr std::uint8_t exp_at(int power) noexcept {
    assert(power >= 0 && power < 512);
    return detail::tables.exp[static_cast<std::size_t>(power)];
}

// Discrete log base alpha; defined for a != 0.
constexpr int log_at(std::uint8_t a) noexcept {
    assert(a != 0);
    return detail::tables.log[a];
}

constexpr std::uint8_t mul(std::uint8_t a, std::uint8_t b) noexcept {
    if (a == 0 || b == 0)
        return 0;
    return detail::tables.exp[static_cast<std::size_t>(detail::tables.log[a]) +
                              static_cast<std::size_t>(detail::tables.log[b])];
}

constexpr std::uint8_t inv(std::uint8_t a) noexcept {
    assert(a != 0);
    return detail::tables.exp[static_cast<std::size_t>(255 - detail::tables.log[a])];
}

constexpr std::uint8_t div(std::uint8_t a, std::uint8_t b) noexcept {
    assert(b != 0);
    if (a == 0)
        return 0;
    return detail::tables.exp[static_cast<std::size_t>(detail::tables.log[a]) + 255 -
                              static_cast<std::size_t>(detail::tables.log[b])];
}

constexpr std::uint8_t pow(std::uint8_t a, unsigned e) noexcept {
    if (e == 0)
        return 1;
    if (a == 0)
        return 0;
    const unsigned lg = (static_cast<unsigned>(detail::tables.log[a]) * e) % 255u;
    return detail::tables.exp[lg];
}

// Evaluates a polynomial with coefficients in highest-degree-first order.
constexpr std::uint8_t poly_eval(std::span<const std::uint8_t> coeffs, std::uint8_t x) noexcept {
    std::uint8_t acc = 0;
    for (std::uint8_t c : coeffs)
        acc = static_cast<std::uint8_t>(mul(acc, x) ^ c);
    return acc;
}

} // namespace screedsolo::gf
