// screedsolo: hide arbitrary payloads in the LSB plane of PNG images behind
// seeded shuffling, Fernet encryption and Reed-Solomon error correction.

#include <array>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <termios.h>
#include <unistd.h>

#include <CLI11.hpp>
#include <json.hpp>

#include "screedsolo/report.hpp"
#include "screedsolo/screedsolo.hpp"

using nlohmann::json;
using namespace screedsolo;

namespace {

// Stable exit-code contract, documented in the README.
enum ExitCode : int {
    kOk = 0,
    kUnexpected = 1,
    kCapacity = 2,
    kFrame = 3,
    kRsDecode = 4,
    kAuth = 5,
    kIo = 6,
    kBadParams = 7,
    kShape = 8,
};

std::vector<std::uint8_t> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open '" + path + "' for reading");
    std::vector<std::uint8_t> data((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
    if (in.bad())
        throw IoError("error while reading '" + path + "'");
    return data;
}

void write_file(const std::string& path, std::span<const std::uint8_t> data) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot open '" + path + "' for writing");
    out.write(reinterpret_cast<const char*>(data.data()),
              static_cast<std::streamsize>(data.size()));
    if (!out)
        throw IoError("error while writing '" + path + "'");
}

void write_report(const std::string& path, const json& doc) {
    if (path.empty())
        return;
    const std::string text = doc.dump(2) + "\n";
    write_file(path, {reinterpret_cast<const std::uint8_t*>(text.data()), text.size()});
}

// Password comes from the environment or an interactive no-echo prompt,
// never from argv (process listings leak arguments).
std::string obtain_password(const std::string& env_var) {
    if (const char* env = std::getenv(env_var.c_str()); env && *env)
        return env;
    if (isatty(STDIN_FILENO)) {
        std::cerr << "Password: " << std::flush;
        termios before{};
        tcgetattr(STDIN_FILENO, &before);
        termios noecho = before;
        noecho.c_lflag &= ~static_cast<tcflag_t>(ECHO);
        tcsetattr(STDIN_FILENO, TCSANOW, &noecho);
        std::string password;
        std::getline(std::cin, password);
        tcsetattr(STDIN_FILENO, TCSANOW, &before);
        std::cerr << "\n";
        return password;
    }
    std::string password;
    std::getline(std::cin, password);
    return password;
}

std::array<std::uint8_t, 16> parse_iv_hex(const std::string& hex) {
    if (hex.size() != 32)
        throw InvalidParams("--iv needs exactly 32 hex characters");
    std::array<std::uint8_t, 16> iv{};
    for (std::size_t i = 0; i < 16; ++i) {
        const auto nibble = [&](char c) -> unsigned {
            if (c >= '0' && c <= '9') return static_cast<unsigned>(c - '0');
            if (c >= 'a' && c <= 'f') return static_cast<unsigned>(c - 'a' + 10);
            if (c >= 'A' && c <= 'F') return static_cast<unsigned>(c - 'A' + 10);
            throw InvalidParams("--iv contains a non-hex character");
        };
        iv[i] = static_cast<std::uint8_t>(nibble(hex[2 * i]) << 4 | nibble(hex[2 * i + 1]));
    }
    return iv;
}

json noise_spec_json(const NoiseSpec& spec) {
    json doc{{"seed", spec.seed}};
    switch (spec.kind) {
        case NoiseKind::SaltPepper:
            doc["kind"] = "salt-pepper";
            doc["salt_prob"] = spec.salt_prob;
            doc["pepper_prob"] = spec.pepper_prob;
            break;
        case NoiseKind::Gaussian:
            doc["kind"] = "gaussian";
            doc["mean"] = spec.mean;
            doc["stddev"] = spec.stddev;
            break;
        case NoiseKind::Speckle:
            doc["kind"] = "speckle";
            doc["stddev"] = spec.stddev;
            break;
        case NoiseKind::Poisson:
            doc["kind"] = "poisson";
            doc["lambda"] = spec.lambda;
            break;
    }
    return doc;
}

struct HideOptions {
    std::string cover_path, payload_path, kind = "text", out_path, report_path;
    std::string password_env = "SCREEDSOLO_PASSWORD";
    int rs_n = kRsDefaultBlockLen, rs_k = kRsDefaultDataLen;
    int quant_bits = 5;
    bool compress = false;
    std::optional<std::uint64_t> timestamp;
    std::optional<std::string> iv_hex;
};

int cmd_hide(const HideOptions& opt) {
    const RsParams rs = RsParams::create(opt.rs_n, opt.rs_k);
    const PixelImage cover = read_png(opt.cover_path);

    PayloadEnvelope env;
    if (opt.kind == "text") {
        env = make_text_envelope(read_file(opt.payload_path), opt.compress);
    } else if (opt.kind == "audio") {
        env = make_audio_envelope(read_file(opt.payload_path));
    } else if (opt.kind == "image") {
        env = make_image_envelope(read_png(opt.payload_path), opt.quant_bits);
    } else {
        throw InvalidParams("--kind must be text, audio or image");
    }

    const std::uint64_t needed = framed_bit_length(env, rs);
    const std::uint64_t cap = capacity_bits(cover);
    if (needed > cap)
        throw InsufficientCapacity("payload needs " + std::to_string(needed) +
                                   " bits but the cover holds " + std::to_string(cap));

    std::optional<std::array<std::uint8_t, 16>> iv;
    if (opt.iv_hex)
        iv = parse_iv_hex(*opt.iv_hex);
    const std::string password = obtain_password(opt.password_env);

    const BitStream bits = encode_payload(env, password, rs, opt.timestamp, iv);
    const PixelImage stego = embed(cover, bits);
    write_png(stego, opt.out_path);

    std::uint64_t flips = 0;
    for (std::size_t i = 0; i < cover.samples.size(); ++i)
        flips += cover.samples[i] != stego.samples[i];

    json report{
        {"command", "hide"},
        {"cover", opt.cover_path},
        {"payload", opt.payload_path},
        {"kind", opt.kind},
        {"stego", opt.out_path},
        {"rs", {{"n", rs.block_len}, {"k", rs.data_len}}},
        {"payload_bits", bits.size()},
        {"capacity_bits", cap},
        {"capacity_used", static_cast<double>(bits.size()) / static_cast<double>(cap)},
        {"lsb_flips", flips},
        {"fidelity", fidelity_report_json(compare(cover, stego))},
    };
    if (opt.kind == "text")
        report["compress"] = opt.compress;
    if (opt.kind == "image")
        report["quant_bits"] = opt.quant_bits;
    if (opt.timestamp)
        report["timestamp"] = *opt.timestamp;
    if (opt.iv_hex)
        report["iv"] = *opt.iv_hex;
    write_report(opt.report_path, report);
    std::cout << report.dump(2) << "\n";
    return kOk;
}

struct RevealOptions {
    std::string stego_path, out_path, report_path;
    std::string password_env = "SCREEDSOLO_PASSWORD";
    int rs_n = kRsDefaultBlockLen, rs_k = kRsDefaultDataLen;
};

int cmd_reveal(const RevealOptions& opt) {
    const RsParams rs = RsParams::create(opt.rs_n, opt.rs_k);
    const PixelImage stego = read_png(opt.stego_path);
    const std::string password = obtain_password(opt.password_env);

    const BitStream bits = extract_framed(stego);
    std::size_t corrected = 0;
    const PayloadEnvelope env = decode_payload(bits, password, rs, &corrected);

    std::string kind;
    std::size_t out_size = 0;
    switch (env.kind) {
        case PayloadKind::Text: {
            kind = "text";
            const auto text = reconstruct_text(env);
            write_file(opt.out_path, text);
            out_size = text.size();
            break;
        }
        case PayloadKind::Audio: {
            kind = "audio";
            const auto audio = reconstruct_audio(env);
            write_file(opt.out_path, audio);
            out_size = audio.size();
            break;
        }
        case PayloadKind::Image: {
            kind = "image";
            const PixelImage img = reconstruct_image(env);
            write_png(img, opt.out_path);
            out_size = img.samples.size();
            break;
        }
    }

    json report{
        {"command", "reveal"},
        {"stego", opt.stego_path},
        {"out", opt.out_path},
        {"kind", kind},
        {"rs", {{"n", rs.block_len}, {"k", rs.data_len}}},
        {"payload_bits", bits.size()},
        {"rs_errors_corrected", corrected},
        {"output_bytes", out_size},
    };
    if (env.kind == PayloadKind::Image)
        report["image"] = {{"width", env.meta.width},
                           {"height", env.meta.height},
                           {"channels", env.meta.channels},
                           {"quant_bits", env.meta.quant_bits}};
    write_report(opt.report_path, report);
    std::cout << report.dump(2) << "\n";
    return kOk;
}

struct AttackOptions {
    std::string in_path, out_path, report_path;
    std::string preset, kind;
    double salt = 0.03, pepper = 0.03, mean = 0.0, stddev = 0.1, lambda = 0.9;
    std::uint64_t seed = 0;
    std::optional<std::uint64_t> embedded_bits;
};

NoiseSpec attack_spec(const AttackOptions& opt) {
    if (!opt.preset.empty()) {
        // Presets named after the evaluation figure parameters.
        if (opt.preset == "salt-pepper-0.03")
            return NoiseSpec::salt_pepper(0.03, 0.03, opt.seed);
        if (opt.preset == "gaussian-0.63")
            return NoiseSpec::gaussian(0.0, 0.63, opt.seed);
        if (opt.preset == "speckle-0.1")
            return NoiseSpec::speckle(0.1, opt.seed);
        if (opt.preset == "poisson-0.9")
            return NoiseSpec::poisson(0.9, opt.seed);
        throw InvalidParams("unknown preset '" + opt.preset + "'");
    }
    if (opt.kind == "salt-pepper")
        return NoiseSpec::salt_pepper(opt.salt, opt.pepper, opt.seed);
    if (opt.kind == "gaussian")
        return NoiseSpec::gaussian(opt.mean, opt.stddev, opt.seed);
    if (opt.kind == "speckle")
        return NoiseSpec::speckle(opt.stddev, opt.seed);
    if (opt.kind == "poisson")
        return NoiseSpec::poisson(opt.lambda, opt.seed);
    throw InvalidParams("pick a --preset or a --noise kind");
}

int cmd_attack(const AttackOptions& opt) {
    const PixelImage input = read_png(opt.in_path);
    const NoiseSpec spec = attack_spec(opt);
    const PixelImage attacked = apply_noise(input, spec);
    write_png(attacked, opt.out_path);

    // Flip rate over the embedded region: an explicit bit count, else the
    // frame header when one parses, else the whole LSB plane.
    std::uint64_t region = capacity_bits(input);
    if (opt.embedded_bits) {
        if (*opt.embedded_bits > region)
            throw InvalidParams("--embedded-bits exceeds capacity");
        region = *opt.embedded_bits;
    } else {
        try {
            region = extract_framed(input).size();
        } catch (const FrameError&) {
        }
    }
    std::uint64_t lsb_flips = 0;
    for (std::uint64_t i = 0; i < region; ++i)
        lsb_flips += (input.samples[static_cast<std::size_t>(i)] ^
                      attacked.samples[static_cast<std::size_t>(i)]) &
                     1;

    json report{
        {"command", "attack"},
        {"in", opt.in_path},
        {"out", opt.out_path},
        {"noise", noise_spec_json(spec)},
        {"embedded_region_bits", region},
        {"lsb_flips", lsb_flips},
        {"lsb_flip_rate", region ? static_cast<double>(lsb_flips) / static_cast<double>(region)
                                 : 0.0},
        {"fidelity", fidelity_report_json(compare(input, attacked))},
    };
    write_report(opt.report_path, report);
    std::cout << report.dump(2) << "\n";
    return kOk;
}

int cmd_evaluate(const std::string& a_path, const std::string& b_path,
                 const std::string& report_path) {
    const PixelImage a = read_png(a_path);
    const PixelImage b = read_png(b_path);
    json report{
        {"command", "evaluate"},
        {"a", a_path},
        {"b", b_path},
        {"fidelity", fidelity_report_json(compare(a, b))},
    };
    write_report(report_path, report);
    std::cout << report.dump(2) << "\n";
    return kOk;
}

int cmd_capacity(const std::string& image_path) {
    const PixelImage img = read_png(image_path);
    const json report{
        {"command", "capacity"},
        {"image", image_path},
        {"width", img.width},
        {"height", img.height},
        {"channels", img.channels},
        {"capacity_bits", capacity_bits(img)},
    };
    std::cout << report.dump(2) << "\n";
    return kOk;
}

int cmd_survival(std::uint64_t n, std::uint64_t k, std::uint64_t capacity, double flip_prob,
                 const std::string& mode_name) {
    SurvivalMode mode = SurvivalMode::Auto;
    if (mode_name == "exact")
        mode = SurvivalMode::Exact;
    else if (mode_name == "normal")
        mode = SurvivalMode::Normal;
    else if (mode_name != "auto")
        throw InvalidQuery("--mode must be auto, exact or normal");

    const SurvivalQuery query{n, k, capacity, flip_prob};
    json report{
        {"command", "survival"},
        {"n", n},
        {"k", k},
        {"flip_prob", flip_prob},
        {"survival_probability", survival_probability(query, mode)},
        {"threshold", survival_threshold(n, k)},
        {"corruption_budget", corruption_budget(n, k)},
    };
    if (capacity != 0) {
        report["capacity_bits"] = capacity;
        report["log2_position_multiplicity"] = log2_position_multiplicity(capacity, n);
    }
    std::cout << report.dump(2) << "\n";
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"SCReedSolo secure, corruption-resilient LSB image steganography"};
    app.require_subcommand(1);

    HideOptions hide;
    CLI::App* hide_cmd = app.add_subcommand("hide", "embed a payload into a cover PNG");
    hide_cmd->add_option("--cover", hide.cover_path, "cover PNG")->required();
    hide_cmd->add_option("--payload", hide.payload_path, "payload file")->required();
    hide_cmd->add_option("--kind", hide.kind, "payload kind: text|audio|image");
    hide_cmd->add_flag("--compress", hide.compress, "deflate text payloads before encryption");
    hide_cmd->add_option("--quant-bits", hide.quant_bits, "image payload quantization bits [1,6]");
    hide_cmd->add_option("--out", hide.out_path, "stego PNG to write")->required();
    hide_cmd->add_option("--report", hide.report_path, "JSON report path");
    hide_cmd->add_option("--rs-n", hide.rs_n, "reed-solomon block length");
    hide_cmd->add_option("--rs-k", hide.rs_k, "reed-solomon data length");
    hide_cmd->add_option("--password-env", hide.password_env, "environment variable holding the password");
    std::uint64_t hide_ts = 0;
    std::string hide_iv;
    CLI::Option* ts_opt = hide_cmd->add_option("--timestamp", hide_ts, "pin the fernet timestamp");
    CLI::Option* iv_opt = hide_cmd->add_option("--iv", hide_iv, "pin the fernet IV (32 hex chars)");

    RevealOptions reveal;
    CLI::App* reveal_cmd = app.add_subcommand("reveal", "recover a payload from a stego PNG");
    reveal_cmd->add_option("--stego", reveal.stego_path, "stego PNG")->required();
    reveal_cmd->add_option("--out", reveal.out_path, "recovered payload path")->required();
    reveal_cmd->add_option("--report", reveal.report_path, "JSON report path");
    reveal_cmd->add_option("--rs-n", reveal.rs_n, "reed-solomon block length");
    reveal_cmd->add_option("--rs-k", reveal.rs_k, "reed-solomon data length");
    reveal_cmd->add_option("--password-env", reveal.password_env,
                           "environment variable holding the password");

    AttackOptions attack;
    CLI::App* attack_cmd = app.add_subcommand("attack", "apply a noise model to an image");
    attack_cmd->add_option("--in", attack.in_path, "input PNG")->required();
    attack_cmd->add_option("--out", attack.out_path, "attacked PNG to write")->required();
    attack_cmd->add_option("--report", attack.report_path, "JSON report path");
    attack_cmd->add_option("--preset", attack.preset,
                           "salt-pepper-0.03|gaussian-0.63|speckle-0.1|poisson-0.9");
    attack_cmd->add_option("--noise", attack.kind, "salt-pepper|gaussian|speckle|poisson");
    attack_cmd->add_option("--salt", attack.salt, "salt probability");
    attack_cmd->add_option("--pepper", attack.pepper, "pepper probability");
    attack_cmd->add_option("--mean", attack.mean, "gaussian mean");
    attack_cmd->add_option("--sigma", attack.stddev, "gaussian/speckle sigma");
    attack_cmd->add_option("--lambda", attack.lambda, "poisson gain");
    attack_cmd->add_option("--seed", attack.seed, "noise RNG seed");
    std::uint64_t attack_bits = 0;
    CLI::Option* bits_opt =
        attack_cmd->add_option("--embedded-bits", attack_bits, "embedded region size in bits");

    std::string eval_a, eval_b, eval_report;
    CLI::App* eval_cmd = app.add_subcommand("evaluate", "fidelity metrics between two images");
    eval_cmd->add_option("--a", eval_a, "first PNG")->required();
    eval_cmd->add_option("--b", eval_b, "second PNG")->required();
    eval_cmd->add_option("--report", eval_report, "JSON report path");

    std::string capacity_image;
    CLI::App* capacity_cmd = app.add_subcommand("capacity", "carrier capacity of an image");
    capacity_cmd->add_option("--image", capacity_image, "PNG to inspect")->required();

    std::uint64_t sv_n = 0, sv_k = 0, sv_capacity = 0;
    double sv_p = 0.5;
    std::string sv_mode = "auto";
    CLI::App* survival_cmd = app.add_subcommand("survival", "payload survival probability");
    survival_cmd->add_option("--n", sv_n, "total embedded bits")->required();
    survival_cmd->add_option("--k", sv_k, "message bits")->required();
    survival_cmd->add_option("--capacity", sv_capacity, "carrier capacity in bits (3MN)");
    survival_cmd->add_option("--flip-prob", sv_p, "per-bit corruption probability");
    survival_cmd->add_option("--mode", sv_mode, "auto|exact|normal");

    CLI11_PARSE(app, argc, argv);

    try {
        if (hide_cmd->parsed()) {
            if (ts_opt->count())
                hide.timestamp = hide_ts;
            if (iv_opt->count())
                hide.iv_hex = hide_iv;
            return cmd_hide(hide);
        }
        if (reveal_cmd->parsed())
            return cmd_reveal(reveal);
        if (attack_cmd->parsed()) {
            if (bits_opt->count())
                attack.embedded_bits = attack_bits;
            return cmd_attack(attack);
        }
        if (eval_cmd->parsed())
            return cmd_evaluate(eval_a, eval_b, eval_report);
        if (capacity_cmd->parsed())
            return cmd_capacity(capacity_image);
        if (survival_cmd->parsed())
            return cmd_survival(sv_n, sv_k, sv_capacity, sv_p, sv_mode);
        std::cerr << app.help() << "\n";
        return kBadParams;
    } catch (const InsufficientCapacity& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kCapacity;
    } catch (const FrameError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFrame;
    } catch (const DecodeFailure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kRsDecode;
    } catch (const LengthMismatch& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kRsDecode;
    } catch (const AuthenticationFailure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kAuth;
    } catch (const EnvelopeParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kAuth;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kIo;
    } catch (const ShapeMismatch& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kShape;
    } catch (const InvalidParams& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBadParams;
    } catch (const InvalidQuery& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBadParams;
    } catch (const QuantBitsOutOfRange& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBadParams;
    } catch (const EmptyPassword& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBadParams;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUnexpected;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return kUnexpected;
    }
}
