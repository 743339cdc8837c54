#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include "screedsolo/errors.hpp"
#include "screedsolo/image.hpp"
#include "screedsolo/rng.hpp"

namespace screedsolo {

enum class NoiseKind { SaltPepper, Gaussian, Speckle, Poisson };

// Noise parameters are interpreted on the [0,1] normalized intensity scale.
struct NoiseSpec {
    NoiseKind kind = NoiseKind::Gaussian;
    double salt_prob = 0.0;    // salt & pepper: P(sample -> 1)
    double pepper_prob = 0.0;  // salt & pepper: P(sample -> 0)
    double mean = 0.0;         // gaussian mu
    double stddev = 0.0;       // gaussian / speckle sigma
    double lambda = 1.0;       // poisson gain on the photon count
    std::uint64_t seed = 0;

    static NoiseSpec salt_pepper(double salt, double pepper, std::uint64_t seed) {
        return NoiseSpec{NoiseKind::SaltPepper, salt, pepper, 0.0, 0.0, 1.0, seed};
    }
    static NoiseSpec gaussian(double mean, double stddev, std::uint64_t seed) {
        return NoiseSpec{NoiseKind::Gaussian, 0.0, 0.0, mean, stddev, 1.0, seed};
    }
    static NoiseSpec speckle(double stddev, std::uint64_t seed) {
        return NoiseSpec{NoiseKind::Speckle, 0.0, 0.0, 0.0, stddev, 1.0, seed};
    }
    static NoiseSpec poisson(double lambda, std::uint64_t seed) {
        return NoiseSpec{NoiseKind::Poisson, 0.0, 0.0, 0.0, 0.0, lambda, seed};
    }
};

inline void validate_noise_spec(const NoiseSpec& spec) {
    switch (spec.kind) {
        case NoiseKind::SaltPepper:
            if (!(spec.salt_prob >= 0.0 && spec.salt_prob <= 1.0) ||
                !(spec.pepper_prob >= 0.0 && spec.pepper_prob <= 1.0) ||
                spec.salt_prob + spec.pepper_prob > 1.0)
                throw InvalidParams("salt/pepper probabilities must lie in [0,1] and sum to <= 1");
            return;
        case NoiseKind::Gaussian:
        case NoiseKind::Speckle:
            if (!std::isfinite(spec.stddev) || spec.stddev < 0.0 || !std::isfinite(spec.mean))
                throw InvalidParams("noise sigma must be finite and >= 0");
            return;
        case NoiseKind::Poisson:
            if (!std::isfinite(spec.lambda) || spec.lambda <= 0.0)
                throw InvalidParams("poisson lambda must be finite and > 0");
            return;
    }
    throw InvalidParams("unknown noise kind");
}

namespace detail {

// [0, 1)
inline double uniform01(Xoshiro256ss& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// (0, 1], safe as a log argument
inline double uniform01_open(Xoshiro256ss& rng) {
    return static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;
}

inline double standard_normal(Xoshiro256ss& rng) {
    const double u1 = uniform01_open(rng);
    const double u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
}

// Exponential inter-arrival counting; switches to a normal approximation
// when the photon count is large enough that the walk becomes wasteful.
inline std::uint64_t poisson_draw(Xoshiro256ss& rng, double mean) {
    if (mean <= 0.0)
        return 0;
    if (mean > 1e4) {
        const double v = mean + std::sqrt(mean) * standard_normal(rng);
        return v <= 0.0 ? 0 : static_cast<std::uint64_t>(std::llround(v));
    }
    std::uint64_t count = 0;
    double t = -std::log(uniform01_open(rng));
    while (t <= mean) {
        ++count;
        t += -std::log(uniform01_open(rng));
    }
    return count;
}

} // namespace detail

// Applies the noise model on a [0,1] normalized copy and rounds half-up back
// to [0,255]. Each sample draws from its own counter-derived generator, so
// the result is a pure function of (image, spec) and is independent of any
// processing order.
inline PixelImage apply_noise(const PixelImage& image, const NoiseSpec& spec) {
    validate_noise_spec(spec);
    PixelImage out = image;
    const std::size_t count = image.sample_count();
    for (std::size_t i = 0; i < count; ++i) {
        Xoshiro256ss rng(splitmix64_at(spec.seed, static_cast<std::uint64_t>(i)));
        const double x = static_cast<double>(image.samples[i]) / 255.0;
        double y = x;
        switch (spec.kind) {
            case NoiseKind::SaltPepper: {
                const double u = detail::uniform01(rng);
                if (u < spec.salt_prob)
                    y = 1.0;
                else if (u < spec.salt_prob + spec.pepper_prob)
                    y = 0.0;
                break;
            }
            case NoiseKind::Gaussian:
                y = x + spec.mean + spec.stddev * detail::standard_normal(rng);
                break;
            case NoiseKind::Speckle:
                y = x + x * spec.stddev * detail::standard_normal(rng);
                break;
            case NoiseKind::Poisson: {
                const double gain = spec.lambda * 255.0;
                y = static_cast<double>(detail::poisson_draw(rng, gain * x)) / gain;
                break;
            }
        }
        y = std::min(1.0, std::max(0.0, y));
        out.samples[i] = static_cast<std::uint8_t>(std::floor(y * 255.0 + 0.5));
    }
    return out;
}

} // namespace screedsolo
