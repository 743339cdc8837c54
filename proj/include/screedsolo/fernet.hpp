#pragma once

#include <array>
#include <cstdint>
#include <ctime>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <openssl/evp.h>

#include "screedsolo/base64.hpp"
#include "screedsolo/digest.hpp"
#include "screedsolo/errors.hpp"
#include "screedsolo/keys.hpp"

namespace screedsolo {

// Fernet token layout (https://github.com/fernet/spec):
//   0x80 | 64-bit big-endian timestamp | 16-byte IV | AES-128-CBC ciphertext
//   (PKCS7 padded) | HMAC-SHA256 over everything before the tag,
// transported as padded base64url text. TTL checking is not performed.
inline constexpr std::uint8_t kFernetVersion = 0x80;
inline constexpr std::size_t kFernetOverhead = 1 + 8 + 16 + 32;  // all but the ciphertext

// Decoded byte length of the token produced for a plaintext of given size.
inline std::size_t fernet_raw_length(std::size_t plaintext_len) {
    return kFernetOverhead + (plaintext_len / 16 + 1) * 16;
}

// Transport (base64url) length of the token for a plaintext of given size.
inline std::size_t fernet_token_length(std::size_t plaintext_len) {
    return (fernet_raw_length(plaintext_len) + 2) / 3 * 4;
}

namespace detail {

struct CipherCtx {
    EVP_CIPHER_CTX* ctx = EVP_CIPHER_CTX_new();
    ~CipherCtx() {
        if (ctx) EVP_CIPHER_CTX_free(ctx);
    }
};

inline std::vector<std::uint8_t> aes128_cbc(std::span<const std::uint8_t> input,
                                            std::span<const std::uint8_t> key,
                                            std::span<const std::uint8_t> iv, bool encrypt) {
    CipherCtx h;
    if (!h.ctx)
        throw Error("cipher context allocation failed");
    if (EVP_CipherInit_ex(h.ctx, EVP_aes_128_cbc(), nullptr, key.data(), iv.data(),
                          encrypt ? 1 : 0) != 1)
        throw Error("AES-128-CBC init failed");

    std::vector<std::uint8_t> out(input.size() + 16);
    int len1 = 0, len2 = 0;
    if (EVP_CipherUpdate(h.ctx, out.data(), &len1, input.data(),
                         static_cast<int>(input.size())) != 1)
        throw Error("AES-128-CBC update failed");
    if (EVP_CipherFinal_ex(h.ctx, out.data() + len1, &len2) != 1) {
        if (!encrypt)
            throw AuthenticationFailure("fernet: invalid PKCS7 padding");
        throw Error("AES-128-CBC finalization failed");
    }
    out.resize(static_cast<std::size_t>(len1 + len2));
    return out;
}

} // namespace detail

// Timestamp and IV are injectable for reproducible output; they default to
// the current time and fresh system randomness.
inline std::string fernet_encrypt(std::span<const std::uint8_t> plaintext, const KeyMaterial& keys,
                                  std::optional<std::uint64_t> timestamp = std::nullopt,
                                  std::optional<std::array<std::uint8_t, 16>> iv = std::nullopt) {
    const std::uint64_t ts =
        timestamp ? *timestamp : static_cast<std::uint64_t>(std::time(nullptr));
    std::array<std::uint8_t, 16> ivv{};
    if (iv)
        ivv = *iv;
    else
        random_bytes(ivv);

    std::vector<std::uint8_t> token;
    token.reserve(fernet_raw_length(plaintext.size()));
    token.push_back(kFernetVersion);
    for (int shift = 56; shift >= 0; shift -= 8)
        token.push_back(static_cast<std::uint8_t>(ts >> shift));
    token.insert(token.end(), ivv.begin(), ivv.end());

    const auto enc_key = keys.encryption_key();
    const auto ciphertext = detail::aes128_cbc(plaintext, enc_key, ivv, true);
    token.insert(token.end(), ciphertext.begin(), ciphertext.end());

    const auto sig_key = keys.signing_key();
    const auto tag = hmac_sha256(sig_key, token);
    token.insert(token.end(), tag.begin(), tag.end());

    return base64_encode(token, Base64Alphabet::UrlSafe);
}

// Verifies the HMAC in constant time before touching the ciphertext. All
// malformed-token conditions (bad base64, wrong version, bad padding) report
// as AuthenticationFailure so failure modes are indistinguishable.
inline std::vector<std::uint8_t> fernet_decrypt(std::string_view token, const KeyMaterial& keys) {
    std::vector<std::uint8_t> raw;
    try {
        raw = base64_decode(token, Base64Alphabet::UrlSafe);
    } catch (const Base64Error&) {
        throw AuthenticationFailure("fernet: malformed base64url token");
    }

    if (raw.size() < kFernetOverhead + 16)
        throw AuthenticationFailure("fernet: token too short");
    if (raw[0] != kFernetVersion)
        throw AuthenticationFailure("fernet: unknown version byte");
    const std::size_t ct_len = raw.size() - kFernetOverhead;
    if (ct_len % 16 != 0)
        throw AuthenticationFailure("fernet: ciphertext is not block aligned");

    const std::span<const std::uint8_t> body(raw.data(), raw.size() - 32);
    const std::span<const std::uint8_t> tag(raw.data() + raw.size() - 32, 32);
    const auto sig_key = keys.signing_key();
    const auto expected = hmac_sha256(sig_key, body);
    if (!constant_time_equal(expected, tag))
        throw AuthenticationFailure("fernet: HMAC verification failed");

    const std::span<const std::uint8_t> iv(raw.data() + 9, 16);
    const std::span<const std::uint8_t> ciphertext(raw.data() + 25, ct_len);
    const auto enc_key = keys.encryption_key();
    return detail::aes128_cbc(ciphertext, enc_key, iv, false);
}

// Timestamp field of an encoded token; fails authentication checks first.
inline std::uint64_t fernet_token_timestamp(std::string_view token) {
    std::vector<std::uint8_t> raw;
    try {
        raw = base64_decode(token, Base64Alphabet::UrlSafe);
    } catch (const Base64Error&) {
        throw AuthenticationFailure("fernet: malformed base64url token");
    }
    if (raw.size() < kFernetOverhead + 16 || raw[0] != kFernetVersion)
        throw AuthenticationFailure("fernet: malformed token");
    std::uint64_t ts = 0;
    for (int i = 1; i <= 8; ++i)
        ts = (ts << 8) | raw[static_cast<std::size_t>(i)];
    return ts;
}

} // namespace screedsolo
