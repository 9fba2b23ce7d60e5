#ifndef AMTIS_HISTOGRAM_HPP
#define AMTIS_HISTOGRAM_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <iterator>
#include <numeric>
#include <ostream>
#include <vector>

#include "amtis/errors.hpp"
#include "amtis/image.hpp"

namespace amtis {

inline constexpr int kLevels = 256;

/// 256-bin frequency table of a grayscale image.
struct Histogram {
    std::array<std::uint64_t, kLevels> counts{};
    std::uint64_t total = 0;

    Histogram() = default;

    explicit Histogram(const std::array<std::uint64_t, kLevels>& c) : counts(c) {
        total = std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
    }
};

/// Histogram scaled to unit mass.
struct NormalizedHistogram {
    std::array<double, kLevels> freqs{};
};

inline Histogram compute_histogram(const GrayImage& img) {
    Histogram h;
    for (std::uint8_t v : img.pixels)
        ++h.counts[v];
    h.total = img.pixels.size();
    return h;
}

inline NormalizedHistogram normalize(const Histogram& h) {
    if (h.total == 0)
        throw EmptyImage("cannot normalize a histogram with zero pixels");
    NormalizedHistogram nh;
    for (int i = 0; i < kLevels; ++i)
        nh.freqs[i] = static_cast<double>(h.counts[i]) / static_cast<double>(h.total);
    return nh;
}

/// All valley levels of the histogram, ascending (the paper's setA).
///
/// A level is a valley when its nearest unequal neighbours on both sides
/// have higher counts. Plateaus are represented by their first level;
/// levels without an unequal neighbour on one side (the histogram's flat
/// ends) are never valleys.
inline std::vector<int> find_valleys(const Histogram& h) {
    std::vector<int> valleys;
    const auto& c = h.counts;
    int plateau_start = 0;
    for (int i = 0; i < kLevels; ++i) {
        bool plateau_ends = (i == kLevels - 1) || (c[i + 1] != c[i]);
        if (!plateau_ends)
            continue;
        // plateau [plateau_start, i] of equal counts
        bool has_left = plateau_start > 0;
        bool has_right = i < kLevels - 1;
        if (has_left && has_right && c[plateau_start - 1] > c[i] && c[i + 1] > c[i])
            valleys.push_back(plateau_start);
        plateau_start = i + 1;
    }
    return valleys;
}

/// The lowest-frequency level of each of `partitions` equal slices of the
/// level range (the paper's setB). Ties go to the lowest level. `partitions`
/// must be a divisor of 256 greater than 1.
inline std::vector<int> partition_minima(const Histogram& h, int partitions) {
    if (partitions <= 1 || kLevels % partitions != 0)
        throw InvalidPartitionCount("partition count must divide 256 and exceed 1");
    const int size = kLevels / partitions;
    std::vector<int> minima;
    minima.reserve(partitions);
    for (int p = 0; p < partitions; ++p) {
        int lo = p * size;
        int best = lo;
        for (int i = lo + 1; i < lo + size; ++i)
            if (h.counts[i] < h.counts[best])
                best = i;
        minima.push_back(best);
    }
    return minima;
}

/// Ascending intersection of two ascending level sequences (setC).
inline std::vector<int> intersect_candidates(const std::vector<int>& set_a,
                                             const std::vector<int>& set_b) {
    std::vector<int> out;
    std::set_intersection(set_a.begin(), set_a.end(), set_b.begin(), set_b.end(),
                          std::back_inserter(out));
    return out;
}

/// The three candidate index sets: valleys, partition minima, and their
/// intersection.
struct CandidateSets {
    std::vector<int> set_a;
    std::vector<int> set_b;
    std::vector<int> set_c;
};

inline CandidateSets candidate_sets(const Histogram& h, int partitions) {
    CandidateSets cs;
    cs.set_a = find_valleys(h);
    cs.set_b = partition_minima(h, partitions);
    cs.set_c = intersect_candidates(cs.set_a, cs.set_b);
    return cs;
}

/// Writes the histogram as CSV with a `level,count` header and 256 rows.
inline void write_histogram_csv(const Histogram& h, std::ostream& os) {
    os << "level,count\n";
    for (int i = 0; i < kLevels; ++i)
        os << i << ',' << h.counts[i] << '\n';
}

} // namespace amtis

#endif
