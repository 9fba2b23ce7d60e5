// Shared generators for the test suites: seeded random images, histograms,
// and the synthetic benchmark corpus.
#ifndef AMTIS_TESTS_SUPPORT_HPP
#define AMTIS_TESTS_SUPPORT_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "amtis/histogram.hpp"
#include "amtis/image.hpp"
#include "amtis/image_io.hpp"

namespace testsupport {

using amtis::GrayImage;
using amtis::Histogram;
using amtis::RgbImage;

inline GrayImage random_gray(int w, int h, std::mt19937& rng) {
    GrayImage img(w, h);
    std::uniform_int_distribution<int> dist(0, 255);
    for (auto& p : img.pixels)
        p = static_cast<std::uint8_t>(dist(rng));
    return img;
}

inline RgbImage random_rgb(int w, int h, std::mt19937& rng) {
    RgbImage img(w, h);
    std::uniform_int_distribution<int> dist(0, 255);
    for (auto& p : img.pixels)
        p = amtis::Rgb{static_cast<std::uint8_t>(dist(rng)),
                       static_cast<std::uint8_t>(dist(rng)),
                       static_cast<std::uint8_t>(dist(rng))};
    return img;
}

struct Mode {
    double level;
    double sigma;
    double weight;
};

/// Image whose pixel values are drawn from a Gaussian mixture; the staple
/// multi-modal test subject.
inline GrayImage mixture_image(int w, int h, const std::vector<Mode>& modes,
                               std::mt19937& rng) {
    std::vector<double> weights;
    for (const Mode& m : modes)
        weights.push_back(m.weight);
    std::discrete_distribution<int> pick(weights.begin(), weights.end());
    GrayImage img(w, h);
    for (auto& p : img.pixels) {
        const Mode& m = modes[pick(rng)];
        std::normal_distribution<double> noise(m.level, m.sigma);
        double v = std::round(noise(rng));
        p = static_cast<std::uint8_t>(std::clamp(v, 0.0, 255.0));
    }
    return img;
}

/// Tri-modal image with hard zero gaps between the populations.
inline GrayImage trimodal_image(int w, int h, std::mt19937& rng) {
    return mixture_image(w, h,
                         {{60.0, 6.0, 1.0}, {128.0, 6.0, 1.0}, {200.0, 6.0, 1.0}}, rng);
}

inline Histogram random_histogram(std::mt19937& rng, int max_count = 1000) {
    std::array<std::uint64_t, amtis::kLevels> counts{};
    std::uniform_int_distribution<int> dist(0, max_count);
    for (auto& c : counts)
        c = static_cast<std::uint64_t>(dist(rng));
    return Histogram(counts);
}

inline Histogram random_positive_histogram(std::mt19937& rng, int max_count = 1000) {
    std::array<std::uint64_t, amtis::kLevels> counts{};
    std::uniform_int_distribution<int> dist(1, max_count);
    for (auto& c : counts)
        c = static_cast<std::uint64_t>(dist(rng));
    return Histogram(counts);
}

/// Arbitrary-width normalized frequency vector, optionally strictly positive.
inline std::vector<double> random_freqs(std::mt19937& rng, int levels, bool positive) {
    std::uniform_real_distribution<double> dist(positive ? 0.05 : 0.0, 1.0);
    std::vector<double> f(levels);
    double sum = 0.0;
    for (double& x : f) {
        x = dist(rng);
        sum += x;
    }
    for (double& x : f)
        x /= sum;
    return f;
}

/// A 1xN image realizing the given histogram counts.
inline GrayImage image_from_counts(const std::array<std::uint64_t, amtis::kLevels>& counts) {
    std::vector<std::uint8_t> pixels;
    for (int level = 0; level < amtis::kLevels; ++level)
        for (std::uint64_t k = 0; k < counts[level]; ++k)
            pixels.push_back(static_cast<std::uint8_t>(level));
    int n = static_cast<int>(pixels.size());
    return GrayImage(n, 1, std::move(pixels));
}

inline GrayImage transpose(const GrayImage& img) {
    GrayImage out(img.height, img.width);
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x)
            out.at(y, x) = img.at(x, y);
    return out;
}

/// Natural-looking synthetic scene: smooth background gradient, a few flat
/// rectangles and disks at distinct gray populations, mild sensor noise.
/// Rich enough in modes that every optimizer finds t in [2,5] thresholds.
inline GrayImage scene_image(int w, int h, std::uint32_t seed) {
    std::mt19937 rng(seed);
    std::vector<Mode> modes;
    std::uniform_real_distribution<double> sig(2.0, 5.0);
    const int mode_count = 8;
    for (int m = 0; m < mode_count; ++m) {
        double level = 20.0 + m * (215.0 / (mode_count - 1));
        modes.push_back({level, sig(rng), 0.5 + (m % 3) * 0.35});
    }
    GrayImage img = mixture_image(w, h, modes, rng);

    // overlay a handful of flat shapes so the scene has spatial structure
    std::uniform_int_distribution<int> lx(0, w - 1), ly(0, h - 1);
    std::uniform_int_distribution<int> size(w / 8 + 1, w / 3 + 2);
    for (int s = 0; s < 6; ++s) {
        int cx = lx(rng), cy = ly(rng), r = size(rng) / 2;
        std::uint8_t level = static_cast<std::uint8_t>(20 + (s * 215) / 5);
        std::normal_distribution<double> noise(0.0, 2.0);
        for (int y = std::max(0, cy - r); y < std::min(h, cy + r); ++y)
            for (int x = std::max(0, cx - r); x < std::min(w, cx + r); ++x)
                if ((x - cx) * (x - cx) + (y - cy) * (y - cy) <= r * r) {
                    double v = level + noise(rng);
                    img.at(x, y) = static_cast<std::uint8_t>(std::clamp(v, 0.0, 255.0));
                }
    }
    return img;
}

struct CorpusEntry {
    std::string name;
    int width;
    int height;
};

/// The synthetic stand-in for the usual benchmark corpus: twelve scenes at
/// the familiar sizes (the giant satellite image is scaled down to keep the
/// suite desk-sized).
inline std::vector<CorpusEntry> corpus_entries() {
    return {
        {"airplane", 256, 256},   {"baboon", 384, 384},      {"blonde", 256, 256},
        {"boat", 256, 256},       {"cameraman", 256, 256},   {"fingerprint_1", 300, 300},
        {"fingerprint_2", 300, 300}, {"frozen", 453, 384},   {"fruits", 320, 320},
        {"hunter", 512, 512},     {"lena", 220, 220},        {"mountain", 320, 240},
    };
}

inline void write_corpus(const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    std::uint32_t seed = 20240ul;
    for (const CorpusEntry& e : corpus_entries())
        amtis::write_pgm(scene_image(e.width, e.height, seed++), dir / (e.name + ".pgm"));
}

} // namespace testsupport

#endif
