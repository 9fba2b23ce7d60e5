#ifndef AMTIS_METRICS_HPP
#define AMTIS_METRICS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <vector>

#include <json.hpp>

#include "amtis/errors.hpp"
#include "amtis/fft.hpp"
#include "amtis/image.hpp"

namespace amtis {

struct PsnrResult {
    double psnr = 0.0; ///< decibels; +infinity when the images match exactly
    double rmse = 0.0;
};

namespace detail {

inline void check_same_dims(const GrayImage& a, const GrayImage& b) {
    if (a.width != b.width || a.height != b.height)
        throw DimensionMismatch("images must have identical dimensions");
}

} // namespace detail

/// Root-mean-square error and 20*log10(255/RMSE). The squared differences
/// are accumulated in integers, so the result is exact for exact inputs.
inline PsnrResult psnr(const GrayImage& orig, const GrayImage& seg) {
    detail::check_same_dims(orig, seg);
    std::uint64_t sum_sq = 0;
    for (std::size_t i = 0; i < orig.pixels.size(); ++i) {
        int d = static_cast<int>(orig.pixels[i]) - static_cast<int>(seg.pixels[i]);
        sum_sq += static_cast<std::uint64_t>(d * d);
    }
    PsnrResult r;
    r.rmse = std::sqrt(static_cast<double>(sum_sq) / static_cast<double>(orig.pixels.size()));
    r.psnr = r.rmse == 0.0 ? std::numeric_limits<double>::infinity()
                           : 20.0 * std::log10(255.0 / r.rmse);
    return r;
}

/// Whole-image structural similarity with the standard stabilizers
/// C1 = (0.01*255)^2 and C2 = (0.03*255)^2. All second-order statistics use
/// the same 1/(N+1) normalization as the covariance, which keeps
/// ssim(x, x) == 1 identically.
inline double ssim(const GrayImage& x, const GrayImage& y) {
    detail::check_same_dims(x, y);
    constexpr double c1 = (0.01 * 255.0) * (0.01 * 255.0);
    constexpr double c2 = (0.03 * 255.0) * (0.03 * 255.0);

    const std::size_t n = x.pixels.size();
    std::uint64_t sx = 0, sy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += x.pixels[i];
        sy += y.pixels[i];
    }
    const double mu_x = static_cast<double>(sx) / static_cast<double>(n);
    const double mu_y = static_cast<double>(sy) / static_cast<double>(n);

    double var_x = 0.0, var_y = 0.0, cov = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double dx = x.pixels[i] - mu_x;
        double dy = y.pixels[i] - mu_y;
        var_x += dx * dx;
        var_y += dy * dy;
        cov += dx * dy;
    }
    const double norm = 1.0 / (static_cast<double>(n) + 1.0);
    var_x *= norm;
    var_y *= norm;
    cov *= norm;

    return ((2.0 * mu_x * mu_y + c1) * (2.0 * cov + c2)) /
           ((mu_x * mu_x + mu_y * mu_y + c1) * (var_x + var_y + c2));
}

struct FsimConfig {
    double t1 = 0.85;      ///< phase-congruency similarity stabilizer
    double t2 = 160.0;     ///< gradient similarity stabilizer
    int scales = 4;        ///< log-Gabor scales
    int orientations = 4;  ///< filter orientations over [0, pi)
    double epsilon = 1e-4; ///< phase-congruency denominator guard
};

namespace detail {

/// Frequency-domain log-Gabor filters, stored as separate radial (per
/// scale) and angular (per orientation) factors over the unshifted DFT
/// grid. Radial parameters follow the common defaults: smallest wavelength
/// 6, scale multiplier 2, sigmaOnf 0.55, angular spread ratio 1.2, and a
/// high-frequency roll-off at 0.45 of Nyquist.
struct LogGaborBank {
    int rows = 0;
    int cols = 0;
    std::vector<std::vector<double>> radial; ///< [scale][pixel]
    std::vector<std::vector<double>> spread; ///< [orientation][pixel]
};

inline LogGaborBank make_log_gabor_bank(int rows, int cols, int scales, int orientations) {
    LogGaborBank bank;
    bank.rows = rows;
    bank.cols = cols;
    const std::size_t n = static_cast<std::size_t>(rows) * cols;

    std::vector<double> radius(n), theta(n);
    for (int v = 0; v < rows; ++v) {
        double fy = (v < (rows + 1) / 2 ? v : v - rows) / static_cast<double>(rows);
        for (int u = 0; u < cols; ++u) {
            double fx = (u < (cols + 1) / 2 ? u : u - cols) / static_cast<double>(cols);
            std::size_t idx = static_cast<std::size_t>(v) * cols + u;
            radius[idx] = std::sqrt(fx * fx + fy * fy);
            theta[idx] = std::atan2(-fy, fx);
        }
    }
    radius[0] = 1.0; // silence log(0) at DC; the DC gain is zeroed below

    constexpr double min_wavelength = 6.0;
    constexpr double mult = 2.0;
    constexpr double sigma_on_f = 0.55;
    constexpr double cutoff = 0.45;
    constexpr int sharpness = 15;

    const double log_sigma = std::log(sigma_on_f);
    bank.radial.assign(scales, std::vector<double>(n));
    for (int s = 0; s < scales; ++s) {
        const double f0 = 1.0 / (min_wavelength * std::pow(mult, s));
        auto& filt = bank.radial[s];
        for (std::size_t i = 0; i < n; ++i) {
            double lr = std::log(radius[i] / f0);
            double lowpass = 1.0 / (1.0 + std::pow(radius[i] / cutoff, 2.0 * sharpness));
            filt[i] = std::exp(-(lr * lr) / (2.0 * log_sigma * log_sigma)) * lowpass;
        }
        filt[0] = 0.0;
    }

    const double theta_sigma = std::numbers::pi / orientations / 1.2;
    bank.spread.assign(orientations, std::vector<double>(n));
    for (int o = 0; o < orientations; ++o) {
        const double angle = o * std::numbers::pi / orientations;
        const double cos_a = std::cos(angle), sin_a = std::sin(angle);
        auto& filt = bank.spread[o];
        for (std::size_t i = 0; i < n; ++i) {
            double ds = std::sin(theta[i]) * cos_a - std::cos(theta[i]) * sin_a;
            double dc = std::cos(theta[i]) * cos_a + std::sin(theta[i]) * sin_a;
            double dtheta = std::abs(std::atan2(ds, dc));
            filt[i] = std::exp(-(dtheta * dtheta) / (2.0 * theta_sigma * theta_sigma));
        }
    }
    return bank;
}

/// Pointwise phase congruency: per orientation, the magnitude of the summed
/// complex filter responses over scales divided by the summed amplitudes,
/// then pooled over orientations:
///   PC = sum_o |sum_s resp| / (eps + sum_o sum_s |resp|).
inline std::vector<double> phase_congruency_map(const GrayImage& img,
                                                const LogGaborBank& bank,
                                                double epsilon) {
    const int rows = img.height, cols = img.width;
    const std::size_t n = static_cast<std::size_t>(rows) * cols;

    std::vector<cplx> spectrum(n);
    for (std::size_t i = 0; i < n; ++i)
        spectrum[i] = cplx(static_cast<double>(img.pixels[i]), 0.0);
    Fft2d plan(rows, cols);
    plan.transform(spectrum, false);

    std::vector<double> total_energy(n, 0.0), total_amplitude(n, 0.0);
    std::vector<double> sum_re(n), sum_im(n), sum_an(n);
    std::vector<cplx> resp(n);

    const int orientations = static_cast<int>(bank.spread.size());
    const int scales = static_cast<int>(bank.radial.size());
    for (int o = 0; o < orientations; ++o) {
        std::fill(sum_re.begin(), sum_re.end(), 0.0);
        std::fill(sum_im.begin(), sum_im.end(), 0.0);
        std::fill(sum_an.begin(), sum_an.end(), 0.0);
        for (int s = 0; s < scales; ++s) {
            for (std::size_t i = 0; i < n; ++i)
                resp[i] = spectrum[i] * (bank.radial[s][i] * bank.spread[o][i]);
            plan.transform(resp, true);
            for (std::size_t i = 0; i < n; ++i) {
                sum_re[i] += resp[i].real();
                sum_im[i] += resp[i].imag();
                sum_an[i] += std::abs(resp[i]);
            }
        }
        for (std::size_t i = 0; i < n; ++i) {
            total_energy[i] += std::sqrt(sum_re[i] * sum_re[i] + sum_im[i] * sum_im[i]);
            total_amplitude[i] += sum_an[i];
        }
    }

    std::vector<double> pc(n);
    for (std::size_t i = 0; i < n; ++i)
        pc[i] = total_energy[i] / (epsilon + total_amplitude[i]);
    return pc;
}

/// Gradient magnitude from the 3x3 Scharr operator ([3 10 3]/16 smoothing,
/// central difference), borders replicated.
inline std::vector<double> gradient_magnitude(const GrayImage& img) {
    const int w = img.width, h = img.height;
    std::vector<double> g(static_cast<std::size_t>(w) * h);
    auto px = [&](int x, int y) -> double {
        x = std::clamp(x, 0, w - 1);
        y = std::clamp(y, 0, h - 1);
        return img.pixels[static_cast<std::size_t>(y) * w + x];
    };
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double gx = (3.0 * (px(x + 1, y - 1) - px(x - 1, y - 1)) +
                         10.0 * (px(x + 1, y) - px(x - 1, y)) +
                         3.0 * (px(x + 1, y + 1) - px(x - 1, y + 1))) /
                        16.0;
            double gy = (3.0 * (px(x - 1, y + 1) - px(x - 1, y - 1)) +
                         10.0 * (px(x, y + 1) - px(x, y - 1)) +
                         3.0 * (px(x + 1, y + 1) - px(x + 1, y - 1))) /
                        16.0;
            g[static_cast<std::size_t>(y) * w + x] = std::sqrt(gx * gx + gy * gy);
        }
    }
    return g;
}

} // namespace detail

/// Feature similarity: gradient and phase-congruency similarity maps,
/// weighted by the pointwise maximum phase congruency of the two images.
inline double fsim(const GrayImage& orig, const GrayImage& seg, const FsimConfig& cfg = {}) {
    detail::check_same_dims(orig, seg);
    if (orig.width < 8 || orig.height < 8)
        throw ImageTooSmall("fsim needs at least 8x8 images");

    detail::LogGaborBank bank =
        detail::make_log_gabor_bank(orig.height, orig.width, cfg.scales, cfg.orientations);
    std::vector<double> pc1 = detail::phase_congruency_map(orig, bank, cfg.epsilon);
    std::vector<double> pc2 = detail::phase_congruency_map(seg, bank, cfg.epsilon);
    std::vector<double> g1 = detail::gradient_magnitude(orig);
    std::vector<double> g2 = detail::gradient_magnitude(seg);

    double num = 0.0, den = 0.0, sl_sum = 0.0;
    const std::size_t n = pc1.size();
    for (std::size_t i = 0; i < n; ++i) {
        double s_pc = (2.0 * pc1[i] * pc2[i] + cfg.t1) / (pc1[i] * pc1[i] + pc2[i] * pc2[i] + cfg.t1);
        double s_g = (2.0 * g1[i] * g2[i] + cfg.t2) / (g1[i] * g1[i] + g2[i] * g2[i] + cfg.t2);
        double sl = s_pc * s_g;
        double pcm = std::max(pc1[i], pc2[i]);
        num += sl * pcm;
        den += pcm;
        sl_sum += sl;
    }
    // Featureless pairs (e.g. two constant images) have an all-zero weight
    // map; fall back to the unweighted mean similarity.
    if (den == 0.0)
        return sl_sum / static_cast<double>(n);
    return num / den;
}

/// The metric bundle reported for one original/segmented pair.
struct QualityReport {
    double psnr = 0.0;
    double rmse = 0.0;
    double ssim = 0.0;
    double fsim = 0.0;
};

inline QualityReport quality_report(const GrayImage& orig, const GrayImage& seg,
                                    const FsimConfig& cfg = {}) {
    QualityReport q;
    PsnrResult p = psnr(orig, seg);
    q.psnr = p.psnr;
    q.rmse = p.rmse;
    q.ssim = ssim(orig, seg);
    q.fsim = fsim(orig, seg, cfg);
    return q;
}

/// JSON object with keys psnr, rmse, ssim, fsim; an infinite PSNR is
/// serialized as the string "inf".
inline nlohmann::json to_json(const QualityReport& q) {
    nlohmann::json j;
    if (std::isinf(q.psnr))
        j["psnr"] = "inf";
    else
        j["psnr"] = q.psnr;
    j["rmse"] = q.rmse;
    j["ssim"] = q.ssim;
    j["fsim"] = q.fsim;
    return j;
}

} // namespace amtis

#endif
