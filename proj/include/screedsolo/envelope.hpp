#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "screedsolo/base64.hpp"
#include "screedsolo/deflate.hpp"
#include "screedsolo/errors.hpp"
#include "screedsolo/image.hpp"

namespace screedsolo {

enum class PayloadKind { Text, Audio, Image };

struct ImageMeta {
    int width = 0;
    int height = 0;
    int channels = 0;
    int quant_bits = 0;

    bool operator==(const ImageMeta&) const = default;
};

// A typed secret plus the metadata needed to rebuild it. `body` holds the
// canonical transport form: the text itself (optionally deflated), the
// base64 text of the deflated audio, or the quantized image symbols.
struct PayloadEnvelope {
    PayloadKind kind = PayloadKind::Text;
    bool text_deflated = false;
    ImageMeta meta;
    std::vector<std::uint8_t> body;

    bool operator==(const PayloadEnvelope&) const = default;
};

// ---- signal-to-text conversions -------------------------------------------

// Keeps the top k bits of each sample and rebases to 64 so every symbol is
// printable ASCII in [64, 64 + 2^k - 1]. Irreversible.
inline std::vector<std::uint8_t> quantize_image(std::span<const std::uint8_t> samples,
                                                int quant_bits) {
    if (quant_bits < 1 || quant_bits > 6)
        throw QuantBitsOutOfRange("quant bits must lie in [1, 6], got " +
                                  std::to_string(quant_bits));
    std::vector<std::uint8_t> out(samples.size());
    const int shift = 8 - quant_bits;
    for (std::size_t i = 0; i < samples.size(); ++i)
        out[i] = static_cast<std::uint8_t>((samples[i] >> shift) + 64);
    return out;
}

inline std::vector<std::uint8_t> dequantize_samples(std::span<const std::uint8_t> symbols,
                                                    int quant_bits) {
    if (quant_bits < 1 || quant_bits > 6)
        throw QuantBitsOutOfRange("quant bits must lie in [1, 6], got " +
                                  std::to_string(quant_bits));
    const int shift = 8 - quant_bits;
    const std::uint8_t top = static_cast<std::uint8_t>(64 + (1 << quant_bits) - 1);
    std::vector<std::uint8_t> out(symbols.size());
    for (std::size_t i = 0; i < symbols.size(); ++i) {
        if (symbols[i] < 64 || symbols[i] > top)
            throw SymbolOutOfRange("quantized symbol " + std::to_string(symbols[i]) +
                                   " outside [64, " + std::to_string(top) + "]");
        out[i] = static_cast<std::uint8_t>((symbols[i] - 64) << shift);
    }
    return out;
}

inline PixelImage dequantize_image(std::span<const std::uint8_t> symbols, const ImageMeta& meta) {
    if (meta.width < 1 || meta.height < 1 || (meta.channels != 1 && meta.channels != 3))
        throw ShapeMismatch("invalid image payload dimensions");
    const std::size_t expected = static_cast<std::size_t>(meta.width) *
                                 static_cast<std::size_t>(meta.height) *
                                 static_cast<std::size_t>(meta.channels);
    if (symbols.size() != expected)
        throw ShapeMismatch("image payload has " + std::to_string(symbols.size()) +
                            " symbols, dimensions need " + std::to_string(expected));
    PixelImage img = PixelImage::create(meta.width, meta.height, meta.channels);
    img.samples = dequantize_samples(symbols, meta.quant_bits);
    return img;
}

// DEFLATE then standard base64, so arbitrary audio bytes become printable text.
inline std::string audio_to_text(std::span<const std::uint8_t> audio) {
    const auto compressed = zlib_compress(audio);
    return base64_encode(compressed, Base64Alphabet::Standard);
}

inline std::vector<std::uint8_t> text_to_audio(std::string_view text) {
    const auto compressed = base64_decode(text, Base64Alphabet::Standard);
    return zlib_decompress(compressed);
}

// ---- envelope construction -------------------------------------------------

inline PayloadEnvelope make_text_envelope(std::span<const std::uint8_t> text,
                                          bool deflate = false) {
    PayloadEnvelope env;
    env.kind = PayloadKind::Text;
    env.text_deflated = deflate;
    env.body = deflate ? zlib_compress(text) : std::vector<std::uint8_t>(text.begin(), text.end());
    return env;
}

inline PayloadEnvelope make_audio_envelope(std::span<const std::uint8_t> audio) {
    PayloadEnvelope env;
    env.kind = PayloadKind::Audio;
    const std::string text = audio_to_text(audio);
    env.body.assign(text.begin(), text.end());
    return env;
}

inline PayloadEnvelope make_image_envelope(const PixelImage& image, int quant_bits) {
    PayloadEnvelope env;
    env.kind = PayloadKind::Image;
    env.meta = ImageMeta{image.width, image.height, image.channels, quant_bits};
    env.body = quantize_image(image.samples, quant_bits);
    return env;
}

// ---- envelope reconstruction ----------------------------------------------

inline std::vector<std::uint8_t> reconstruct_text(const PayloadEnvelope& env) {
    if (env.kind != PayloadKind::Text)
        throw EnvelopeParseError("envelope does not hold text");
    return env.text_deflated ? zlib_decompress(env.body) : env.body;
}

inline std::vector<std::uint8_t> reconstruct_audio(const PayloadEnvelope& env) {
    if (env.kind != PayloadKind::Audio)
        throw EnvelopeParseError("envelope does not hold audio");
    return text_to_audio(std::string_view(reinterpret_cast<const char*>(env.body.data()),
                                          env.body.size()));
}

inline PixelImage reconstruct_image(const PayloadEnvelope& env) {
    if (env.kind != PayloadKind::Image)
        throw EnvelopeParseError("envelope does not hold an image");
    return dequantize_image(env.body, env.meta);
}

// ---- wire form --------------------------------------------------------------
//
// Serialized envelope: "SCRS1;<K>;<RS10>;<META>;" followed by the raw body.
//   K     one of T (text), Z (deflated text), A (audio), I (image)
//   RS10  the fernet-token byte count as exactly 10 zero-padded digits; the
//         receiver re-derives this from the coded length and uses the field
//         as a consistency check
//   META  empty, or "width,height,channels,quant_bits" for images
// The header travels inside the shuffled/encrypted/coded payload, so it is
// confidential and error-corrected like the body.

namespace detail {

inline std::string envelope_kind_code(const PayloadEnvelope& env) {
    switch (env.kind) {
        case PayloadKind::Text: return env.text_deflated ? "Z" : "T";
        case PayloadKind::Audio: return "A";
        case PayloadKind::Image: return "I";
    }
    throw EnvelopeParseError("unknown payload kind");
}

inline std::string envelope_meta_field(const PayloadEnvelope& env) {
    if (env.kind != PayloadKind::Image)
        return {};
    return std::to_string(env.meta.width) + "," + std::to_string(env.meta.height) + "," +
           std::to_string(env.meta.channels) + "," + std::to_string(env.meta.quant_bits);
}

} // namespace detail

inline constexpr std::string_view kEnvelopeMagic = "SCRS1;";
inline constexpr std::size_t kRsLenDigits = 10;

// Header length is independent of the rs-length value, so the total
// serialized size is known before the token length is.
inline std::size_t serialized_envelope_length(const PayloadEnvelope& env) {
    return kEnvelopeMagic.size() + detail::envelope_kind_code(env).size() + 1 + kRsLenDigits + 1 +
           detail::envelope_meta_field(env).size() + 1 + env.body.size();
}

inline std::vector<std::uint8_t> serialize_envelope(const PayloadEnvelope& env,
                                                    std::uint64_t rs_input_len) {
    std::string rs10 = std::to_string(rs_input_len);
    if (rs10.size() > kRsLenDigits)
        throw PayloadTooLarge("rs input length field overflow");
    rs10.insert(0, kRsLenDigits - rs10.size(), '0');

    std::string header(kEnvelopeMagic);
    header += detail::envelope_kind_code(env);
    header += ';';
    header += rs10;
    header += ';';
    header += detail::envelope_meta_field(env);
    header += ';';

    std::vector<std::uint8_t> out(header.begin(), header.end());
    out.insert(out.end(), env.body.begin(), env.body.end());
    return out;
}

struct ParsedEnvelope {
    PayloadEnvelope envelope;
    std::uint64_t rs_input_len = 0;
};

inline ParsedEnvelope parse_envelope(std::span<const std::uint8_t> raw) {
    const std::string_view view(reinterpret_cast<const char*>(raw.data()), raw.size());
    if (view.substr(0, kEnvelopeMagic.size()) != kEnvelopeMagic)
        throw EnvelopeParseError("envelope magic missing");
    std::size_t pos = kEnvelopeMagic.size();

    const std::size_t kind_end = view.find(';', pos);
    if (kind_end == std::string_view::npos)
        throw EnvelopeParseError("envelope kind field unterminated");
    const std::string_view kind = view.substr(pos, kind_end - pos);
    pos = kind_end + 1;

    if (pos + kRsLenDigits >= view.size() || view[pos + kRsLenDigits] != ';')
        throw EnvelopeParseError("envelope length field malformed");
    std::uint64_t rs_len = 0;
    for (std::size_t i = 0; i < kRsLenDigits; ++i) {
        const char c = view[pos + i];
        if (c < '0' || c > '9')
            throw EnvelopeParseError("envelope length field malformed");
        rs_len = rs_len * 10 + static_cast<std::uint64_t>(c - '0');
    }
    pos += kRsLenDigits + 1;

    const std::size_t meta_end = view.find(';', pos);
    if (meta_end == std::string_view::npos)
        throw EnvelopeParseError("envelope meta field unterminated");
    const std::string_view meta = view.substr(pos, meta_end - pos);
    pos = meta_end + 1;

    ParsedEnvelope parsed;
    parsed.rs_input_len = rs_len;
    PayloadEnvelope& env = parsed.envelope;
    env.body.assign(raw.begin() + static_cast<std::ptrdiff_t>(pos), raw.end());

    if (kind == "T" || kind == "Z") {
        env.kind = PayloadKind::Text;
        env.text_deflated = kind == "Z";
        if (!meta.empty())
            throw EnvelopeParseError("text envelope carries unexpected metadata");
    } else if (kind == "A") {
        env.kind = PayloadKind::Audio;
        if (!meta.empty())
            throw EnvelopeParseError("audio envelope carries unexpected metadata");
    } else if (kind == "I") {
        env.kind = PayloadKind::Image;
        int fields[4] = {0, 0, 0, 0};
        std::size_t field = 0, mpos = 0;
        while (field < 4) {
            if (mpos >= meta.size())
                throw EnvelopeParseError("image metadata truncated");
            long v = 0;
            bool digits = false;
            while (mpos < meta.size() && meta[mpos] >= '0' && meta[mpos] <= '9') {
                v = v * 10 + (meta[mpos] - '0');
                if (v > 1'000'000'000)
                    throw EnvelopeParseError("image metadata value out of range");
                ++mpos;
                digits = true;
            }
            if (!digits)
                throw EnvelopeParseError("image metadata malformed");
            fields[field++] = static_cast<int>(v);
            if (field < 4) {
                if (mpos >= meta.size() || meta[mpos] != ',')
                    throw EnvelopeParseError("image metadata malformed");
                ++mpos;
            }
        }
        if (mpos != meta.size())
            throw EnvelopeParseError("image metadata has trailing data");
        env.meta = ImageMeta{fields[0], fields[1], fields[2], fields[3]};
        const std::size_t expected = static_cast<std::size_t>(fields[0]) *
                                     static_cast<std::size_t>(fields[1]) *
                                     static_cast<std::size_t>(fields[2]);
        if (env.meta.width < 1 || env.meta.height < 1 ||
            (env.meta.channels != 1 && env.meta.channels != 3) || env.meta.quant_bits < 1 ||
            env.meta.quant_bits > 6 || env.body.size() != expected)
            throw EnvelopeParseError("image metadata inconsistent with body");
    } else {
        throw EnvelopeParseError("unknown envelope kind code");
    }
    return parsed;
}

} // namespace screedsolo
