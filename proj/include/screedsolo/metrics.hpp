#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "screedsolo/errors.hpp"
#include "screedsolo/image.hpp"

namespace screedsolo {

// All seven comparison metrics from the evaluation tables, plus the LSB flip
// percentage. vi_ab/vi_ba are the conditional entropies H(A|B), H(B|A) in
// bits; psnr_db and hausdorff may be +infinity.
struct FidelityReport {
    double cover_loss_percent = 0.0;
    double csim = 1.0;
    double mse = 0.0;
    double psnr_db = std::numeric_limits<double>::infinity();
    double ssim = 1.0;
    double vi_ab = 0.0;
    double vi_ba = 0.0;
    double hausdorff = 0.0;
    double nrmse = 0.0;
};

// SSIM constants (Wang et al. defaults on 8-bit data).
inline constexpr double kSsimK1 = 0.01;
inline constexpr double kSsimK2 = 0.03;
inline constexpr double kSsimL = 255.0;
inline constexpr int kSsimWindow = 11;
inline constexpr double kSsimSigma = 1.5;
inline constexpr int kHausdorffThreshold = 128;

namespace detail {

// Separable Gaussian filtering restricted to the fully covered (valid)
// region, matching the reference SSIM computation.
class ValidGaussian {
public:
    ValidGaussian(int window, double sigma) : window_(window) {
        kernel_.resize(static_cast<std::size_t>(window));
        const int radius = window / 2;
        double sum = 0.0;
        for (int i = 0; i < window; ++i) {
            const double d = i - radius;
            kernel_[static_cast<std::size_t>(i)] = std::exp(-0.5 * d * d / (sigma * sigma));
            sum += kernel_[static_cast<std::size_t>(i)];
        }
        for (double& w : kernel_)
            w /= sum;
    }

    // in: h x w, out: (h - window + 1) x (w - window + 1)
    std::vector<double> apply(const std::vector<double>& in, int h, int w) const {
        const int ow = w - window_ + 1;
        const int oh = h - window_ + 1;
        std::vector<double> horiz(static_cast<std::size_t>(h) * static_cast<std::size_t>(ow));
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < ow; ++x) {
                double acc = 0.0;
                for (int i = 0; i < window_; ++i)
                    acc += kernel_[static_cast<std::size_t>(i)] *
                           in[static_cast<std::size_t>(y) * static_cast<std::size_t>(w) +
                              static_cast<std::size_t>(x + i)];
                horiz[static_cast<std::size_t>(y) * static_cast<std::size_t>(ow) +
                      static_cast<std::size_t>(x)] = acc;
            }
        std::vector<double> out(static_cast<std::size_t>(oh) * static_cast<std::size_t>(ow));
        for (int y = 0; y < oh; ++y)
            for (int x = 0; x < ow; ++x) {
                double acc = 0.0;
                for (int i = 0; i < window_; ++i)
                    acc += kernel_[static_cast<std::size_t>(i)] *
                           horiz[static_cast<std::size_t>(y + i) * static_cast<std::size_t>(ow) +
                                 static_cast<std::size_t>(x)];
                out[static_cast<std::size_t>(y) * static_cast<std::size_t>(ow) +
                    static_cast<std::size_t>(x)] = acc;
            }
        return out;
    }

private:
    int window_;
    std::vector<double> kernel_;
};

inline std::vector<double> channel_plane(const PixelImage& img, int channel) {
    std::vector<double> plane(static_cast<std::size_t>(img.width) *
                              static_cast<std::size_t>(img.height));
    const std::size_t stride = static_cast<std::size_t>(img.channels);
    for (std::size_t i = 0; i < plane.size(); ++i)
        plane[i] = static_cast<double>(img.samples[i * stride + static_cast<std::size_t>(channel)]);
    return plane;
}

inline double ssim_channel(const std::vector<double>& a, const std::vector<double>& b, int h,
                           int w, int window) {
    const double c1 = (kSsimK1 * kSsimL) * (kSsimK1 * kSsimL);
    const double c2 = (kSsimK2 * kSsimL) * (kSsimK2 * kSsimL);
    const ValidGaussian filt(window, kSsimSigma);

    const std::size_t n = a.size();
    std::vector<double> aa(n), bb(n), ab(n);
    for (std::size_t i = 0; i < n; ++i) {
        aa[i] = a[i] * a[i];
        bb[i] = b[i] * b[i];
        ab[i] = a[i] * b[i];
    }
    const auto mu_a = filt.apply(a, h, w);
    const auto mu_b = filt.apply(b, h, w);
    const auto e_aa = filt.apply(aa, h, w);
    const auto e_bb = filt.apply(bb, h, w);
    const auto e_ab = filt.apply(ab, h, w);

    double total = 0.0;
    for (std::size_t i = 0; i < mu_a.size(); ++i) {
        const double var_a = e_aa[i] - mu_a[i] * mu_a[i];
        const double var_b = e_bb[i] - mu_b[i] * mu_b[i];
        const double cov = e_ab[i] - mu_a[i] * mu_b[i];
        total += ((2.0 * mu_a[i] * mu_b[i] + c1) * (2.0 * cov + c2)) /
                 ((mu_a[i] * mu_a[i] + mu_b[i] * mu_b[i] + c1) * (var_a + var_b + c2));
    }
    return total / static_cast<double>(mu_a.size());
}

// Felzenszwalb & Huttenlocher 1D squared distance transform (lower envelope
// of parabolas).
inline void edt_1d(std::span<const double> f, std::span<double> d, std::vector<int>& v,
                   std::vector<double>& z) {
    const int n = static_cast<int>(f.size());
    constexpr double inf = std::numeric_limits<double>::infinity();
    int k = 0;
    v[0] = 0;
    z[0] = -inf;
    z[1] = inf;
    for (int q = 1; q < n; ++q) {
        double s = ((f[static_cast<std::size_t>(q)] + static_cast<double>(q) * q) -
                    (f[static_cast<std::size_t>(v[static_cast<std::size_t>(k)])] +
                     static_cast<double>(v[static_cast<std::size_t>(k)]) *
                         v[static_cast<std::size_t>(k)])) /
                   (2.0 * q - 2.0 * v[static_cast<std::size_t>(k)]);
        while (s <= z[static_cast<std::size_t>(k)]) {
            --k;
            s = ((f[static_cast<std::size_t>(q)] + static_cast<double>(q) * q) -
                 (f[static_cast<std::size_t>(v[static_cast<std::size_t>(k)])] +
                  static_cast<double>(v[static_cast<std::size_t>(k)]) *
                      v[static_cast<std::size_t>(k)])) /
                (2.0 * q - 2.0 * v[static_cast<std::size_t>(k)]);
        }
        ++k;
        v[static_cast<std::size_t>(k)] = q;
        z[static_cast<std::size_t>(k)] = s;
        z[static_cast<std::size_t>(k) + 1] = inf;
    }
    k = 0;
    for (int q = 0; q < n; ++q) {
        while (z[static_cast<std::size_t>(k) + 1] < static_cast<double>(q))
            ++k;
        const double dq = q - v[static_cast<std::size_t>(k)];
        d[static_cast<std::size_t>(q)] =
            dq * dq + f[static_cast<std::size_t>(v[static_cast<std::size_t>(k)])];
    }
}

// Squared Euclidean distance from every grid cell to the nearest set cell.
// Non-set cells start at a large finite height: true infinities would feed
// inf - inf into the parabola intersection.
inline std::vector<double> edt_2d(const std::vector<bool>& set, int h, int w) {
    constexpr double far_away = 1e20;
    std::vector<double> dist(static_cast<std::size_t>(h) * static_cast<std::size_t>(w));
    for (std::size_t i = 0; i < dist.size(); ++i)
        dist[i] = set[i] ? 0.0 : far_away;

    const int longest = std::max(h, w);
    std::vector<double> scratch_in(static_cast<std::size_t>(longest));
    std::vector<double> scratch_out(static_cast<std::size_t>(longest));
    std::vector<int> v(static_cast<std::size_t>(longest));
    std::vector<double> z(static_cast<std::size_t>(longest) + 1);

    for (int x = 0; x < w; ++x) {  // columns
        for (int y = 0; y < h; ++y)
            scratch_in[static_cast<std::size_t>(y)] =
                dist[static_cast<std::size_t>(y) * static_cast<std::size_t>(w) +
                     static_cast<std::size_t>(x)];
        edt_1d({scratch_in.data(), static_cast<std::size_t>(h)},
               {scratch_out.data(), static_cast<std::size_t>(h)}, v, z);
        for (int y = 0; y < h; ++y)
            dist[static_cast<std::size_t>(y) * static_cast<std::size_t>(w) +
                 static_cast<std::size_t>(x)] = scratch_out[static_cast<std::size_t>(y)];
    }
    for (int y = 0; y < h; ++y) {  // rows
        edt_1d({dist.data() + static_cast<std::size_t>(y) * static_cast<std::size_t>(w),
                static_cast<std::size_t>(w)},
               {scratch_out.data(), static_cast<std::size_t>(w)}, v, z);
        for (int x = 0; x < w; ++x)
            dist[static_cast<std::size_t>(y) * static_cast<std::size_t>(w) +
                 static_cast<std::size_t>(x)] = scratch_out[static_cast<std::size_t>(x)];
    }
    return dist;
}

// Foreground mask: BT.601 luma strictly above the threshold.
inline std::vector<bool> luma_foreground(const PixelImage& img) {
    std::vector<bool> fg(static_cast<std::size_t>(img.width) *
                         static_cast<std::size_t>(img.height));
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x) {
            double luma;
            if (img.channels == 1) {
                luma = img.at(x, y, 0);
            } else {
                luma = 0.299 * img.at(x, y, 0) + 0.587 * img.at(x, y, 1) +
                       0.114 * img.at(x, y, 2);
            }
            fg[static_cast<std::size_t>(y) * static_cast<std::size_t>(img.width) +
               static_cast<std::size_t>(x)] = luma > kHausdorffThreshold;
        }
    return fg;
}

inline double directed_hausdorff_sq(const std::vector<bool>& from, const std::vector<double>& to_dist) {
    double worst = 0.0;
    for (std::size_t i = 0; i < from.size(); ++i)
        if (from[i] && to_dist[i] > worst)
            worst = to_dist[i];
    return worst;
}

} // namespace detail

// Per-channel exact 256-bin counts.
inline std::vector<std::array<std::uint64_t, 256>> histogram(const PixelImage& image) {
    std::vector<std::array<std::uint64_t, 256>> hist(
        static_cast<std::size_t>(image.channels));
    for (auto& h : hist)
        h.fill(0);
    const std::size_t stride = static_cast<std::size_t>(image.channels);
    for (std::size_t i = 0; i < image.samples.size(); ++i)
        ++hist[i % stride][image.samples[i]];
    return hist;
}

inline double ssim(const PixelImage& a, const PixelImage& b) {
    require_same_shape(a, b);
    int window = kSsimWindow;
    const int smallest = std::min(a.width, a.height);
    if (smallest < window)
        window = smallest % 2 == 1 ? smallest : smallest - 1;
    if (window < 1)
        throw ShapeMismatch("image too small for SSIM");

    double total = 0.0;
    for (int c = 0; c < a.channels; ++c)
        total += detail::ssim_channel(detail::channel_plane(a, c), detail::channel_plane(b, c),
                                      a.height, a.width, window);
    return total / a.channels;
}

// Symmetric Hausdorff distance between the luma-threshold foregrounds.
// Both foregrounds empty gives 0; exactly one empty gives +infinity.
inline double hausdorff_distance(const PixelImage& a, const PixelImage& b) {
    require_same_shape(a, b);
    const auto fg_a = detail::luma_foreground(a);
    const auto fg_b = detail::luma_foreground(b);
    const bool has_a = std::find(fg_a.begin(), fg_a.end(), true) != fg_a.end();
    const bool has_b = std::find(fg_b.begin(), fg_b.end(), true) != fg_b.end();
    if (!has_a && !has_b)
        return 0.0;
    if (has_a != has_b)
        return std::numeric_limits<double>::infinity();

    const auto dist_to_a = detail::edt_2d(fg_a, a.height, a.width);
    const auto dist_to_b = detail::edt_2d(fg_b, a.height, a.width);
    const double ab = detail::directed_hausdorff_sq(fg_a, dist_to_b);
    const double ba = detail::directed_hausdorff_sq(fg_b, dist_to_a);
    return std::sqrt(std::max(ab, ba));
}

inline FidelityReport compare(const PixelImage& a, const PixelImage& b) {
    require_same_shape(a, b);
    const std::size_t n = a.sample_count();
    FidelityReport rep;

    std::uint64_t flips = 0;
    double sq_err = 0.0, dot = 0.0, norm_a = 0.0, norm_b = 0.0;
    std::vector<std::uint64_t> joint(256 * 256, 0);
    for (std::size_t i = 0; i < n; ++i) {
        const double va = a.samples[i];
        const double vb = b.samples[i];
        const double diff = va - vb;
        sq_err += diff * diff;
        dot += va * vb;
        norm_a += va * va;
        norm_b += vb * vb;
        flips += (a.samples[i] ^ b.samples[i]) & 1;
        ++joint[static_cast<std::size_t>(a.samples[i]) * 256 + b.samples[i]];
    }

    rep.cover_loss_percent = 100.0 * static_cast<double>(flips) / static_cast<double>(n);
    rep.mse = sq_err / static_cast<double>(n);
    rep.psnr_db = rep.mse > 0.0 ? 10.0 * std::log10(255.0 * 255.0 / rep.mse)
                                : std::numeric_limits<double>::infinity();
    if (norm_a == 0.0 && norm_b == 0.0)
        rep.csim = 1.0;
    else if (norm_a == 0.0 || norm_b == 0.0)
        rep.csim = 0.0;
    else
        rep.csim = std::clamp(dot / std::sqrt(norm_a * norm_b), -1.0, 1.0);
    if (norm_a == 0.0)
        rep.nrmse = sq_err == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    else
        rep.nrmse = std::sqrt(sq_err) / std::sqrt(norm_a);

    // Variation-of-information pair from the 256x256 joint sample histogram.
    const double total = static_cast<double>(n);
    double h_joint = 0.0;
    std::array<double, 256> marg_a{}, marg_b{};
    for (std::size_t va = 0; va < 256; ++va)
        for (std::size_t vb = 0; vb < 256; ++vb) {
            const std::uint64_t c = joint[va * 256 + vb];
            if (c == 0)
                continue;
            const double p = static_cast<double>(c) / total;
            h_joint -= p * std::log2(p);
            marg_a[va] += p;
            marg_b[vb] += p;
        }
    double h_a = 0.0, h_b = 0.0;
    for (int v = 0; v < 256; ++v) {
        if (marg_a[static_cast<std::size_t>(v)] > 0.0)
            h_a -= marg_a[static_cast<std::size_t>(v)] * std::log2(marg_a[static_cast<std::size_t>(v)]);
        if (marg_b[static_cast<std::size_t>(v)] > 0.0)
            h_b -= marg_b[static_cast<std::size_t>(v)] * std::log2(marg_b[static_cast<std::size_t>(v)]);
    }
    rep.vi_ab = std::max(0.0, h_joint - h_b);  // H(A|B)
    rep.vi_ba = std::max(0.0, h_joint - h_a);  // H(B|A)

    rep.ssim = ssim(a, b);
    rep.hausdorff = hausdorff_distance(a, b);
    return rep;
}

} // namespace screedsolo
