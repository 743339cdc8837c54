#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "screedsolo/errors.hpp"
#include "screedsolo/image.hpp"
#include "screedsolo/lsb.hpp"

namespace screedsolo {

// Payload survival model: the carrier holds n embedded bits (k message bits
// plus n-k parity bits) and the attack flips each embedded bit independently
// with probability flip_prob. Successful transmission needs at least
// tau = ceil((n+k)/2) surviving bits.
struct SurvivalQuery {
    std::uint64_t n = 0;
    std::uint64_t k = 0;
    std::uint64_t capacity = 0;  // 3MN carrier bits; 0 means unknown/unchecked
    double flip_prob = 0.5;
};

enum class SurvivalMode { Auto, Exact, Normal };

inline std::uint64_t survival_threshold(std::uint64_t n, std::uint64_t k) {
    if (k > n)
        throw InvalidQuery("k must not exceed n");
    return (n + k + 1) / 2;  // ceil((n+k)/2)
}

inline std::uint64_t corruption_budget(std::uint64_t n, std::uint64_t k) {
    if (k > n)
        throw InvalidQuery("k must not exceed n");
    return (n - k) / 2;
}

inline void validate_query(const SurvivalQuery& q) {
    if (q.k > q.n)
        throw InvalidQuery("k must not exceed n");
    if (q.capacity != 0 && q.n > q.capacity)
        throw InvalidQuery("n must not exceed the carrier capacity");
    if (!(q.flip_prob >= 0.0 && q.flip_prob <= 1.0))
        throw InvalidQuery("flip probability must lie in [0, 1]");
}

namespace detail {

inline double log2_factorial(std::uint64_t n) {
    return std::lgamma(static_cast<double>(n) + 1.0) / std::log(2.0);
}

inline double log2_choose(std::uint64_t n, std::uint64_t k) {
    if (k > n)
        return -std::numeric_limits<double>::infinity();
    return log2_factorial(n) - log2_factorial(k) - log2_factorial(n - k);
}

// Upper tail Q(z) = P(Z >= z) of the standard normal.
inline double normal_upper_tail(double z) {
    return 0.5 * std::erfc(z / std::sqrt(2.0));
}

} // namespace detail

// log2 of the number of ways to place n payload bits into the carrier,
// C(capacity, n). This is the multiplicity factor that appears alongside the
// binomial tail in the printed survival expression; it is reported as a
// diagnostic only and never enters the probability.
inline double log2_position_multiplicity(std::uint64_t capacity, std::uint64_t n) {
    if (n > capacity)
        throw InvalidQuery("n must not exceed the carrier capacity");
    return detail::log2_choose(capacity, n);
}

// P(X >= tau) with X ~ Binomial(n, 1 - flip_prob). Exact log2-space
// summation up to n = 10^4 (or always, when forced); continuity-corrected
// normal approximation beyond that. Clamped to [0, 1].
inline double survival_probability(const SurvivalQuery& q, SurvivalMode mode = SurvivalMode::Auto) {
    validate_query(q);
    const std::uint64_t tau = survival_threshold(q.n, q.k);
    const double p_survive = 1.0 - q.flip_prob;

    if (q.n == 0)
        return 1.0;  // tau == 0, nothing to corrupt
    if (p_survive == 0.0)
        return tau == 0 ? 1.0 : 0.0;
    if (p_survive == 1.0)
        return 1.0;

    const bool exact = mode == SurvivalMode::Exact ||
                       (mode == SurvivalMode::Auto && q.n <= 10'000);
    if (exact) {
        const double log2_ps = std::log2(p_survive);
        const double log2_pf = std::log2(q.flip_prob);
        double sum = 0.0;
        for (std::uint64_t i = tau; i <= q.n; ++i) {
            const double lg = detail::log2_choose(q.n, i) +
                              static_cast<double>(i) * log2_ps +
                              static_cast<double>(q.n - i) * log2_pf;
            sum += std::exp2(lg);
        }
        return std::min(1.0, std::max(0.0, sum));
    }

    const double nd = static_cast<double>(q.n);
    const double mean = nd * p_survive;
    const double sigma = std::sqrt(nd * p_survive * q.flip_prob);
    const double z = (static_cast<double>(tau) - 0.5 - mean) / sigma;
    return std::min(1.0, std::max(0.0, detail::normal_upper_tail(z)));
}

struct ParityCheckResult {
    std::uint64_t survivor_count = 0;
    std::uint64_t threshold = 0;
    bool necessary_condition_met = false;
};

// Counts embedded positions (the first n samples in embedding order) whose
// LSB survived the attack, against the tau = ceil((n+k)/2) requirement.
inline ParityCheckResult parity_consistency_check(const PixelImage& cover,
                                                  const PixelImage& attacked, std::uint64_t n,
                                                  std::uint64_t k) {
    require_same_shape(cover, attacked);
    if (k > n)
        throw InvalidQuery("k must not exceed n");
    if (n > capacity_bits(cover))
        throw InvalidQuery("n exceeds the carrier capacity");

    ParityCheckResult result;
    result.threshold = survival_threshold(n, k);
    for (std::uint64_t i = 0; i < n; ++i)
        result.survivor_count +=
            ((cover.samples[static_cast<std::size_t>(i)] ^
              attacked.samples[static_cast<std::size_t>(i)]) & 1) == 0;
    result.necessary_condition_met = result.survivor_count >= result.threshold;
    return result;
}

} // namespace screedsolo
