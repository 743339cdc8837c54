#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "screedsolo/errors.hpp"
#include "screedsolo/gf256.hpp"

namespace screedsolo {

// Systematic Reed-Solomon code over GF(256). A codeword is data || parity
// with parity = (data * x^(n-k)) mod g(x) and g(x) = prod_{i=0}^{n-k-1} (x - alpha^i),
// i.e. first consecutive root alpha^0, the common convention. Up to
// floor((n-k)/2) symbol errors per block are correctable.
struct RsParams {
    int block_len;  // n, total symbols per codeword (<= 255)
    int data_len;   // k, message symbols per codeword (1 <= k < n)

    static RsParams create(int n, int k) {
        if (n > 255 || k < 1 || k >= n)
            throw InvalidParams("reed-solomon params require 1 <= k < n <= 255, got n=" +
                                std::to_string(n) + " k=" + std::to_string(k));
        return RsParams{n, k};
    }

    int parity_len() const noexcept { return block_len - data_len; }
    int max_correctable() const noexcept { return parity_len() / 2; }

    bool operator==(const RsParams&) const = default;
};

inline constexpr int kRsDefaultBlockLen = 255;
inline constexpr int kRsDefaultDataLen = 223;

inline RsParams rs_default_params() { return RsParams{kRsDefaultBlockLen, kRsDefaultDataLen}; }

struct RsBlock {
    std::vector<std::uint8_t> data;
    std::vector<std::uint8_t> parity;

    std::vector<std::uint8_t> codeword() const {
        std::vector<std::uint8_t> w(data);
        w.insert(w.end(), parity.begin(), parity.end());
        return w;
    }
};

struct RsDecoded {
    std::vector<std::uint8_t> data;
    int errors_corrected = 0;
};

// g(x) coefficients, monic, highest degree first. Degree = parity_count.
inline std::vector<std::uint8_t> rs_generator_poly(int parity_count) {
    std::vector<std::uint8_t> g{1};
    for (int i = 0; i < parity_count; ++i) {
        const std::uint8_t root = gf::exp_at(i);
        std::vector<std::uint8_t> next(g.size() + 1, 0);
        for (std::size_t j = 0; j < g.size(); ++j) {
            next[j] ^= g[j];                       // coefficient * x
            next[j + 1] ^= gf::mul(g[j], root);    // coefficient * root
        }
        g = std::move(next);
    }
    return g;
}

namespace detail {

// Polynomial long division of data * x^parity by g; returns the remainder.
inline std::vector<std::uint8_t> rs_parity(std::span<const std::uint8_t> data,
                                           std::span<const std::uint8_t> gen) {
    const std::size_t parity = gen.size() - 1;
    std::vector<std::uint8_t> rem(parity, 0);
    for (std::uint8_t byte : data) {
        const std::uint8_t coef = static_cast<std::uint8_t>(byte ^ rem.front());
        rem.erase(rem.begin());
        rem.push_back(0);
        if (coef != 0)
            for (std::size_t j = 0; j < parity; ++j)
                rem[j] ^= gf::mul(gen[j + 1], coef);
    }
    return rem;
}

// Received word interpreted as a polynomial, first byte = highest degree.
inline std::uint8_t eval_received(std::span<const std::uint8_t> received, int power) {
    const std::uint8_t x = gf::exp_at(power);
    std::uint8_t acc = 0;
    for (std::uint8_t byte : received)
        acc = static_cast<std::uint8_t>(gf::mul(acc, x) ^ byte);
    return acc;
}

inline bool compute_syndromes(std::span<const std::uint8_t> received, int parity,
                              std::vector<std::uint8_t>& out) {
    out.assign(static_cast<std::size_t>(parity), 0);
    bool any = false;
    for (int j = 0; j < parity; ++j) {
        out[static_cast<std::size_t>(j)] = eval_received(received, j);
        any = any || out[static_cast<std::size_t>(j)] != 0;
    }
    return any;
}

} // namespace detail

inline RsBlock rs_encode_block(std::span<const std::uint8_t> data, const RsParams& params) {
    RsParams::create(params.block_len, params.data_len);
    if (static_cast<int>(data.size()) != params.data_len)
        throw InvalidParams("rs_encode_block: data length " + std::to_string(data.size()) +
                            " does not match k=" + std::to_string(params.data_len));
    const auto gen = rs_generator_poly(params.parity_len());
    return RsBlock{{data.begin(), data.end()}, detail::rs_parity(data, gen)};
}

// Full syndrome / Berlekamp-Massey / Chien / Forney decode with a closing
// syndrome re-check so miscorrections beyond t never pass silently.
inline RsDecoded rs_decode_block(std::span<const std::uint8_t> received, const RsParams& params) {
    RsParams::create(params.block_len, params.data_len);
    const int n = params.block_len;
    const int parity = params.parity_len();
    const int t = params.max_correctable();
    if (static_cast<int>(received.size()) != n)
        throw InvalidParams("rs_decode_block: received length " + std::to_string(received.size()) +
                            " does not match n=" + std::to_string(n));

    std::vector<std::uint8_t> synd;
    if (!detail::compute_syndromes(received, parity, synd))
        return RsDecoded{{received.begin(), received.begin() + params.data_len}, 0};

    // Berlekamp-Massey: find the minimal LFSR (error locator) for the syndromes.
    std::vector<std::uint8_t> lambda(static_cast<std::size_t>(parity) + 1, 0);
    std::vector<std::uint8_t> prev(lambda), scratch(lambda);
    lambda[0] = prev[0] = 1;
    int errors = 0;
    int shift = 1;
    std::uint8_t prev_delta = 1;
    for (int i = 0; i < parity; ++i) {
        std::uint8_t delta = synd[static_cast<std::size_t>(i)];
        for (int j = 1; j <= errors; ++j)
            delta ^= gf::mul(lambda[static_cast<std::size_t>(j)],
                             synd[static_cast<std::size_t>(i - j)]);
        if (delta == 0) {
            ++shift;
            continue;
        }
        const std::uint8_t coef = gf::div(delta, prev_delta);
        if (2 * errors <= i) {
            scratch = lambda;
            for (std::size_t j = 0; j + static_cast<std::size_t>(shift) < lambda.size(); ++j)
                lambda[j + static_cast<std::size_t>(shift)] ^= gf::mul(coef, prev[j]);
            errors = i + 1 - errors;
            prev = std::move(scratch);
            prev_delta = delta;
            shift = 1;
        } else {
            for (std::size_t j = 0; j + static_cast<std::size_t>(shift) < lambda.size(); ++j)
                lambda[j + static_cast<std::size_t>(shift)] ^= gf::mul(coef, prev[j]);
            ++shift;
        }
    }

    int degree = 0;
    for (int j = parity; j >= 1; --j)
        if (lambda[static_cast<std::size_t>(j)] != 0) {
            degree = j;
            break;
        }
    if (errors > t || degree != errors)
        throw DecodeFailure("reed-solomon: more than t=" + std::to_string(t) +
                            " symbol errors in block");

    // Chien search restricted to valid positions. An error at received index i
    // sits at polynomial degree d = n-1-i and has locator X = alpha^d, so we
    // look for roots of lambda at alpha^{-d}.
    std::vector<int> error_degrees;
    error_degrees.reserve(static_cast<std::size_t>(errors));
    for (int d = 0; d < n && static_cast<int>(error_degrees.size()) < errors; ++d) {
        const std::uint8_t x_inv = gf::exp_at(255 - (d % 255));
        std::uint8_t acc = 0;
        for (int j = errors; j >= 0; --j)
            acc = static_cast<std::uint8_t>(gf::mul(acc, x_inv) ^
                                            lambda[static_cast<std::size_t>(j)]);
        if (acc == 0)
            error_degrees.push_back(d);
    }
    if (static_cast<int>(error_degrees.size()) != errors)
        throw DecodeFailure("reed-solomon: error locator degree disagrees with root count");

    // Error evaluator omega(x) = S(x) * lambda(x) mod x^parity, low-first.
    std::vector<std::uint8_t> omega(static_cast<std::size_t>(parity), 0);
    for (int i = 0; i < parity; ++i) {
        std::uint8_t sum = 0;
        for (int j = 0; j <= i && j <= errors; ++j)
            sum ^= gf::mul(lambda[static_cast<std::size_t>(j)],
                           synd[static_cast<std::size_t>(i - j)]);
        omega[static_cast<std::size_t>(i)] = sum;
    }

    std::vector<std::uint8_t> corrected(received.begin(), received.end());
    int applied = 0;
    for (int d : error_degrees) {
        const std::uint8_t x = gf::exp_at(d % 255);
        const std::uint8_t x_inv = gf::exp_at(255 - (d % 255));

        std::uint8_t num = 0;
        for (int j = parity - 1; j >= 0; --j)
            num = static_cast<std::uint8_t>(gf::mul(num, x_inv) ^ omega[static_cast<std::size_t>(j)]);

        // Formal derivative of lambda evaluated at x_inv: odd terms only.
        std::uint8_t den = 0;
        for (int j = 1; j <= errors; j += 2)
            den ^= gf::mul(lambda[static_cast<std::size_t>(j)], gf::pow(x_inv, static_cast<unsigned>(j - 1)));
        if (den == 0)
            throw DecodeFailure("reed-solomon: forney denominator vanished");

        const std::uint8_t magnitude = gf::mul(x, gf::div(num, den));
        if (magnitude != 0) {
            corrected[static_cast<std::size_t>(n - 1 - d)] ^= magnitude;
            ++applied;
        }
    }

    if (detail::compute_syndromes(corrected, parity, synd))
        throw DecodeFailure("reed-solomon: syndromes nonzero after correction");

    return RsDecoded{{corrected.begin(), corrected.begin() + params.data_len}, applied};
}

// Splits a message into k-byte chunks and emits data||parity per chunk. The
// final short chunk keeps the full parity count (shortened code), so
// output length = len + ceil(len/k) * (n-k).
inline std::vector<std::uint8_t> rs_encode_stream(std::span<const std::uint8_t> message,
                                                  const RsParams& params) {
    RsParams::create(params.block_len, params.data_len);
    const std::size_t k = static_cast<std::size_t>(params.data_len);
    const std::size_t parity = static_cast<std::size_t>(params.parity_len());
    const auto gen = rs_generator_poly(params.parity_len());

    std::vector<std::uint8_t> out;
    out.reserve(message.size() + (message.size() + k - 1) / k * parity);
    for (std::size_t off = 0; off < message.size(); off += k) {
        const auto chunk = message.subspan(off, std::min(k, message.size() - off));
        out.insert(out.end(), chunk.begin(), chunk.end());
        const auto par = detail::rs_parity(chunk, gen);
        out.insert(out.end(), par.begin(), par.end());
    }
    return out;
}

// Expected rs_encode_stream output size for a message of original_len bytes.
inline std::size_t rs_coded_length(std::size_t original_len, const RsParams& params) {
    const std::size_t k = static_cast<std::size_t>(params.data_len);
    const std::size_t blocks = (original_len + k - 1) / k;
    return original_len + blocks * static_cast<std::size_t>(params.parity_len());
}

// Recovers the message length that produced a coded stream of coded_len
// bytes under the chunking rule; throws LengthMismatch if no length fits.
inline std::size_t rs_original_length(std::size_t coded_len, const RsParams& params) {
    const std::size_t n = static_cast<std::size_t>(params.block_len);
    const std::size_t k = static_cast<std::size_t>(params.data_len);
    const std::size_t parity = static_cast<std::size_t>(params.parity_len());
    const std::size_t rem = coded_len % n;
    if (rem == 0)
        return coded_len / n * k;
    if (rem <= parity)
        throw LengthMismatch("rs stream length " + std::to_string(coded_len) +
                             " is not consistent with (n,k)=(" + std::to_string(n) + "," +
                             std::to_string(k) + ")");
    return coded_len / n * k + (rem - parity);
}

inline std::vector<std::uint8_t> rs_decode_stream(std::span<const std::uint8_t> coded,
                                                  std::size_t original_len,
                                                  const RsParams& params,
                                                  std::size_t* errors_corrected = nullptr) {
    RsParams::create(params.block_len, params.data_len);
    if (coded.size() != rs_coded_length(original_len, params))
        throw LengthMismatch("rs stream length " + std::to_string(coded.size()) +
                             " does not match original length " + std::to_string(original_len));

    const std::size_t k = static_cast<std::size_t>(params.data_len);
    const std::size_t parity = static_cast<std::size_t>(params.parity_len());
    std::vector<std::uint8_t> out;
    out.reserve(original_len);
    std::size_t total_corrected = 0;

    std::size_t produced = 0;
    std::size_t off = 0;
    while (produced < original_len) {
        const std::size_t chunk = std::min(k, original_len - produced);
        const RsParams block_params{static_cast<int>(chunk + parity), static_cast<int>(chunk)};
        auto decoded = rs_decode_block(coded.subspan(off, chunk + parity), block_params);
        out.insert(out.end(), decoded.data.begin(), decoded.data.end());
        total_corrected += static_cast<std::size_t>(decoded.errors_corrected);
        produced += chunk;
        off += chunk + parity;
    }
    if (errors_corrected)
        *errors_corrected = total_corrected;
    return out;
}

} // namespace screedsolo
