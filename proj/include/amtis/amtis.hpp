#ifndef AMTIS_AMTIS_HPP
#define AMTIS_AMTIS_HPP

#include <algorithm>
#include <cassert>
#include <vector>

#include "amtis/errors.hpp"
#include "amtis/histogram.hpp"
#include "amtis/image.hpp"
#include "amtis/threshold_set.hpp"

namespace amtis {

/// What to do when the candidate intersection holds fewer levels than the
/// number of thresholds requested.
enum class CandidateFallback {
    error,     ///< report the failure (the algorithm as published)
    use_set_a, ///< retry selection over the full valley set
};

struct AmtisConfig {
    int partitions = 32;
    CandidateFallback fallback = CandidateFallback::error;
    /// Take the first candidate of the last cluster instead of the one next
    /// to its mean.
    bool first_of_last_cluster = false;
};

/// Picks `t` thresholds from an ascending candidate list by splitting it
/// into `t` contiguous near-equal groups and, per group, taking the first
/// candidate at or above the group mean.
inline ThresholdSet select_thresholds(const std::vector<int>& candidates, int t,
                                      bool first_of_last_cluster = false) {
    const int n = static_cast<int>(candidates.size());
    if (t < 1)
        throw std::invalid_argument("threshold count must be at least 1");
    if (n < t)
        throw InsufficientCandidates("fewer candidate levels than thresholds requested");

    std::vector<int> chosen;
    chosen.reserve(t);
    const int base = n / t;
    const int extra = n % t; // first `extra` groups take one more element
    int begin = 0;
    for (int g = 0; g < t; ++g) {
        const int size = base + (g < extra ? 1 : 0);
        const int end = begin + size;
        if (first_of_last_cluster && g == t - 1) {
            chosen.push_back(candidates[begin]);
            break;
        }
        long long sum = 0;
        for (int i = begin; i < end; ++i)
            sum += candidates[i];
        const double mean = static_cast<double>(sum) / size;
        int pick = candidates[end - 1]; // guard; the mean never exceeds the max
        for (int i = begin; i < end; ++i) {
            if (candidates[i] >= mean) {
                pick = candidates[i];
                break;
            }
        }
        chosen.push_back(pick);
        begin = end;
    }
    assert(std::is_sorted(chosen.begin(), chosen.end()));
    return ThresholdSet(chosen);
}

/// The full pipeline: histogram, valley set, partition minima, candidate
/// intersection, cluster selection.
inline ThresholdSet amtis_thresholds(const GrayImage& img, int t,
                                     const AmtisConfig& cfg = {}) {
    Histogram h = compute_histogram(img);
    CandidateSets cs = candidate_sets(h, cfg.partitions);
    const std::vector<int>* pool = &cs.set_c;
    if (static_cast<int>(pool->size()) < t && cfg.fallback == CandidateFallback::use_set_a)
        pool = &cs.set_a;
    return select_thresholds(*pool, t, cfg.first_of_last_cluster);
}

} // namespace amtis

#endif
