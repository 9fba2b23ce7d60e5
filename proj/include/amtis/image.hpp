#ifndef AMTIS_IMAGE_HPP
#define AMTIS_IMAGE_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "amtis/errors.hpp"
#include "amtis/threshold_set.hpp"

namespace amtis {

struct Rgb {
    std::uint8_t r = 0;
    std::uint8_t g = 0;
    std::uint8_t b = 0;

    friend bool operator==(const Rgb&, const Rgb&) = default;
};

namespace detail {

inline void check_dims(int width, int height) {
    if (width <= 0 || height <= 0)
        throw std::invalid_argument("image dimensions must be positive");
}

} // namespace detail

/// 8-bit-per-channel color image, row-major.
struct RgbImage {
    int width = 0;
    int height = 0;
    std::vector<Rgb> pixels;

    RgbImage() = default;

    RgbImage(int w, int h, Rgb fill = {}) : width(w), height(h) {
        detail::check_dims(w, h);
        pixels.assign(static_cast<std::size_t>(w) * h, fill);
    }

    RgbImage(int w, int h, std::vector<Rgb> px)
        : width(w), height(h), pixels(std::move(px)) {
        detail::check_dims(w, h);
        if (pixels.size() != static_cast<std::size_t>(w) * h)
            throw std::invalid_argument("pixel buffer size does not match dimensions");
    }

    Rgb& at(int x, int y) { return pixels[static_cast<std::size_t>(y) * width + x]; }
    const Rgb& at(int x, int y) const { return pixels[static_cast<std::size_t>(y) * width + x]; }
};

/// 8-bit grayscale image, row-major. The common currency of the library.
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;

    GrayImage() = default;

    GrayImage(int w, int h, std::uint8_t fill = 0) : width(w), height(h) {
        detail::check_dims(w, h);
        pixels.assign(static_cast<std::size_t>(w) * h, fill);
    }

    GrayImage(int w, int h, std::vector<std::uint8_t> px)
        : width(w), height(h), pixels(std::move(px)) {
        detail::check_dims(w, h);
        if (pixels.size() != static_cast<std::size_t>(w) * h)
            throw std::invalid_argument("pixel buffer size does not match dimensions");
    }

    std::uint8_t& at(int x, int y) { return pixels[static_cast<std::size_t>(y) * width + x]; }
    std::uint8_t at(int x, int y) const { return pixels[static_cast<std::size_t>(y) * width + x]; }

    friend bool operator==(const GrayImage&, const GrayImage&) = default;
};

/// Image whose pixels are 0 or 1.
struct BinaryImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;

    BinaryImage() = default;

    BinaryImage(int w, int h) : width(w), height(h) {
        detail::check_dims(w, h);
        pixels.assign(static_cast<std::size_t>(w) * h, 0);
    }

    friend bool operator==(const BinaryImage&, const BinaryImage&) = default;
};

/// Luma conversion with the usual 0.2989 / 0.5870 / 0.1140 weights.
/// The weighted sum is rounded half-up and clamped to [0, 255].
inline std::uint8_t gray_value(Rgb p) {
    double sum = 0.2989 * p.r + 0.5870 * p.g + 0.1140 * p.b;
    double rounded = std::floor(sum + 0.5);
    return static_cast<std::uint8_t>(std::clamp(rounded, 0.0, 255.0));
}

inline GrayImage to_grayscale(const RgbImage& img) {
    GrayImage out(img.width, img.height);
    for (std::size_t i = 0; i < img.pixels.size(); ++i)
        out.pixels[i] = gray_value(img.pixels[i]);
    return out;
}

/// Global binarization. A pixel maps to 1 when it lies strictly below the
/// threshold and to 0 otherwise (object = dark side).
inline BinaryImage binarize(const GrayImage& img, int th) {
    if (th < 0 || th > 256)
        throw std::invalid_argument("binarize threshold must lie in [0, 256]");
    BinaryImage out(img.width, img.height);
    for (std::size_t i = 0; i < img.pixels.size(); ++i)
        out.pixels[i] = img.pixels[i] < th ? 1 : 0;
    return out;
}

/// Segment an image with a threshold set. Pixels at or below the first
/// threshold and pixels above the last keep their value; a pixel falling in
/// the interior band (th[i-1], th[i]] is replaced by the band's lower
/// threshold th[i-1].
inline GrayImage apply_thresholds(const GrayImage& img, const ThresholdSet& t_set) {
    const std::vector<int>& th = t_set.levels();
    GrayImage out(img.width, img.height);
    for (std::size_t i = 0; i < img.pixels.size(); ++i) {
        int v = img.pixels[i];
        if (v <= th.front() || v > th.back()) {
            out.pixels[i] = static_cast<std::uint8_t>(v);
            continue;
        }
        // first threshold >= v; v > th.front() guarantees band > 0
        auto it = std::lower_bound(th.begin(), th.end(), v);
        out.pixels[i] = static_cast<std::uint8_t>(*(it - 1));
    }
    return out;
}

} // namespace amtis

#endif
