#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "screedsolo/bitstream.hpp"
#include "screedsolo/envelope.hpp"
#include "screedsolo/errors.hpp"
#include "screedsolo/fernet.hpp"
#include "screedsolo/keys.hpp"
#include "screedsolo/reed_solomon.hpp"
#include "screedsolo/shuffle.hpp"

namespace screedsolo {

// Encode chain: serialize -> seeded shuffle -> fernet -> reed-solomon ->
// MSB-first bits behind a 32-bit big-endian length header. The decode chain
// runs the exact reverse.

// Reed-Solomon input size (= fernet token transport size) for an envelope.
inline std::uint64_t rs_input_length_for(const PayloadEnvelope& env) {
    return fernet_token_length(serialized_envelope_length(env));
}

// Total framed size in bits, header included, as produced by encode_payload.
inline std::uint64_t framed_bit_length(const PayloadEnvelope& env, const RsParams& rs) {
    return 32 + 8 * static_cast<std::uint64_t>(
                        rs_coded_length(static_cast<std::size_t>(rs_input_length_for(env)), rs));
}

inline BitStream encode_payload(const PayloadEnvelope& env, std::string_view password,
                                const RsParams& rs,
                                std::optional<std::uint64_t> timestamp = std::nullopt,
                                std::optional<std::array<std::uint8_t, 16>> iv = std::nullopt) {
    const KeyMaterial keys = derive_keys(password);

    const std::uint64_t rs_input_len = rs_input_length_for(env);
    const auto raw = serialize_envelope(env, rs_input_len);
    const auto shuffled = shuffle_bytes(raw, keys.shuffle_seed);
    const std::string token = fernet_encrypt(shuffled, keys, timestamp, iv);

    const std::span<const std::uint8_t> token_bytes(
        reinterpret_cast<const std::uint8_t*>(token.data()), token.size());
    const auto coded = rs_encode_stream(token_bytes, rs);

    const std::uint64_t payload_bits = 8 * static_cast<std::uint64_t>(coded.size());
    if (payload_bits >= (std::uint64_t{1} << 32))
        throw PayloadTooLarge("payload of " + std::to_string(payload_bits) +
                              " bits exceeds the 32-bit frame header");

    BitStream bits;
    bits.append_u32_be(static_cast<std::uint32_t>(payload_bits));
    bits.append_bytes(coded);
    return bits;
}

inline PayloadEnvelope decode_payload(const BitStream& bits, std::string_view password,
                                      const RsParams& rs,
                                      std::size_t* rs_errors_corrected = nullptr) {
    if (bits.size() < 32)
        throw FrameError("bit stream shorter than the 32-bit header");
    const std::uint32_t payload_bits = bits.read_u32_be(0);
    if (payload_bits > bits.size() - 32)
        throw FrameError("frame header claims " + std::to_string(payload_bits) +
                         " bits but only " + std::to_string(bits.size() - 32) + " follow");
    if (payload_bits % 8 != 0)
        throw FrameError("frame payload is not byte aligned");

    const KeyMaterial keys = derive_keys(password);
    const auto coded = bits.slice_bytes(32, payload_bits);

    // The chunking rule pins the token length given the coded length.
    const std::size_t token_len = rs_original_length(coded.size(), rs);
    const auto token_bytes = rs_decode_stream(coded, token_len, rs, rs_errors_corrected);

    const std::string_view token(reinterpret_cast<const char*>(token_bytes.data()),
                                 token_bytes.size());
    const auto shuffled = fernet_decrypt(token, keys);
    const auto raw = unshuffle_bytes(shuffled, keys.shuffle_seed);

    ParsedEnvelope parsed = parse_envelope(raw);
    if (parsed.rs_input_len != token_bytes.size())
        throw EnvelopeParseError("envelope length field disagrees with the received token");
    return std::move(parsed.envelope);
}

} // namespace screedsolo
