#ifndef AMTIS_BASELINES_HPP
#define AMTIS_BASELINES_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "amtis/errors.hpp"
#include "amtis/histogram.hpp"
#include "amtis/threshold_set.hpp"

namespace amtis {

enum class Sense { maximize, minimize };

struct ObjectiveValue {
    double value = 0.0;
    Sense sense = Sense::maximize;
};

/// Prefix sums of h(i) and i*h(i); class mass and first moment over any
/// index range [a, b) come out as single subtractions.
struct MomentTables {
    std::vector<double> cum0;
    std::vector<double> cum1;

    explicit MomentTables(std::span<const double> freqs) {
        const std::size_t n = freqs.size();
        cum0.resize(n + 1, 0.0);
        cum1.resize(n + 1, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            cum0[i + 1] = cum0[i] + freqs[i];
            cum1[i + 1] = cum1[i] + static_cast<double>(i) * freqs[i];
        }
    }

    int levels() const { return static_cast<int>(cum0.size()) - 1; }
    double m0(int a, int b) const { return cum0[b] - cum0[a]; }
    double m1(int a, int b) const { return cum1[b] - cum1[a]; }
};

/// How a multilevel search explores the threshold space.
enum class SearchStrategy {
    automatic,           ///< exhaustive for t <= 2, dynamic programming beyond
    exhaustive,          ///< enumerate every strictly increasing threshold vector
    dynamic_programming, ///< suffix-table DP, cost O(t * L^2)
};

namespace detail {

inline bool improves(double v, double best, Sense sense) {
    return sense == Sense::maximize ? v > best : v < best;
}

inline void check_search_args(int levels, int t) {
    if (levels < 2)
        throw std::invalid_argument("search needs at least two levels");
    if (t < 1 || t > levels - 1)
        throw std::invalid_argument("threshold count must lie in [1, levels-1]");
}

/// Enumerates all C(L-1, t) threshold vectors in ascending lexicographic
/// order; keeps the first vector attaining the best finite objective, so
/// ties resolve to the lexicographically smallest.
template <class Cost>
std::vector<int> search_exhaustive(int levels, int t, Sense sense, const Cost& cost) {
    check_search_args(levels, t);
    const int L = levels;
    std::vector<int> th(t);
    for (int i = 0; i < t; ++i)
        th[i] = i + 1;

    std::vector<int> best_th;
    double best = 0.0;
    bool have = false;
    while (true) {
        double v = cost(0, th[0]);
        for (int i = 1; i < t; ++i)
            v += cost(th[i - 1], th[i]);
        v += cost(th[t - 1], L);
        if (std::isfinite(v) && (!have || improves(v, best, sense))) {
            best = v;
            best_th = th;
            have = true;
        }
        int k = t - 1;
        while (k >= 0 && th[k] == L - 1 - (t - 1 - k))
            --k;
        if (k < 0)
            break;
        ++th[k];
        for (int i = k + 1; i < t; ++i)
            th[i] = th[i - 1] + 1;
    }
    if (!have)
        throw DegenerateHistogram("no feasible threshold assignment");
    return best_th;
}

/// Suffix-table dynamic program over class boundaries. g_k(i) is the best
/// objective for splitting [i, L) into k classes; boundaries are recovered
/// from the stored argmins. Scanning candidate boundaries in ascending order
/// with strict-improvement updates reproduces the exhaustive tie-break.
template <class Cost>
std::vector<int> search_dp(int levels, int t, Sense sense, const Cost& cost) {
    check_search_args(levels, t);
    const int L = levels;
    const int classes = t + 1;
    const double worst = sense == Sense::maximize
                             ? -std::numeric_limits<double>::infinity()
                             : std::numeric_limits<double>::infinity();

    std::vector<double> g_prev(L + 1, worst);
    std::vector<double> g_cur(L + 1, worst);
    std::vector<std::vector<int>> choice(classes + 1, std::vector<int>(L + 1, -1));

    for (int i = 0; i < L; ++i) {
        double v = cost(i, L);
        g_prev[i] = std::isfinite(v) ? v : worst;
    }
    for (int k = 2; k <= classes; ++k) {
        std::fill(g_cur.begin(), g_cur.end(), worst);
        for (int i = 0; i <= L - k; ++i) {
            double best = worst;
            int arg = -1;
            for (int j = i + 1; j <= L - (k - 1); ++j) {
                if (g_prev[j] == worst)
                    continue;
                double v = cost(i, j) + g_prev[j];
                if (!std::isfinite(v))
                    continue;
                if (arg < 0 || improves(v, best, sense)) {
                    best = v;
                    arg = j;
                }
            }
            g_cur[i] = best;
            choice[k][i] = arg;
        }
        std::swap(g_prev, g_cur);
    }

    std::vector<int> th;
    th.reserve(t);
    int i = 0;
    for (int k = classes; k >= 2; --k) {
        int j = choice[k][i];
        if (j < 0)
            throw DegenerateHistogram("no feasible threshold assignment");
        th.push_back(j);
        i = j;
    }
    return th;
}

template <class Cost>
std::vector<int> run_search(int levels, int t, Sense sense, const Cost& cost,
                            SearchStrategy strategy) {
    switch (strategy) {
    case SearchStrategy::exhaustive:
        return search_exhaustive(levels, t, sense, cost);
    case SearchStrategy::dynamic_programming:
        return search_dp(levels, t, sense, cost);
    case SearchStrategy::automatic:
    default:
        return t <= 2 ? search_exhaustive(levels, t, sense, cost)
                      : search_dp(levels, t, sense, cost);
    }
}

inline void require_enough_nonzero(std::span<const double> freqs, int t) {
    int nonzero = 0;
    for (double f : freqs)
        if (f > 0.0 && ++nonzero > t)
            return;
    throw DegenerateHistogram("histogram has fewer nonempty bins than classes");
}

} // namespace detail

// --- Otsu: between-class variance ---------------------------------------

/// Generalized between-class variance over the t+1 classes induced by the
/// threshold set. Empty classes contribute nothing.
inline ObjectiveValue otsu_objective(const NormalizedHistogram& nh,
                                     const ThresholdSet& t_set) {
    const auto& h = nh.freqs;
    double mu_total = 0.0;
    for (int i = 0; i < kLevels; ++i)
        mu_total += i * h[i];

    std::vector<int> bounds{0};
    bounds.insert(bounds.end(), t_set.begin(), t_set.end());
    bounds.push_back(kLevels);

    double sigma_b = 0.0;
    for (std::size_t c = 0; c + 1 < bounds.size(); ++c) {
        double w = 0.0, s = 0.0;
        for (int i = bounds[c]; i < bounds[c + 1]; ++i) {
            w += h[i];
            s += i * h[i];
        }
        if (w <= 0.0)
            continue;
        double mu = s / w;
        sigma_b += w * (mu - mu_total) * (mu - mu_total);
    }
    return {sigma_b, Sense::maximize};
}

/// Searches thresholds over an arbitrary-width frequency table. The public
/// 256-level entry points wrap this; tests also drive it at reduced widths.
inline std::vector<int> otsu_search(std::span<const double> freqs, int t,
                                    SearchStrategy strategy = SearchStrategy::automatic) {
    detail::require_enough_nonzero(freqs, t);
    MomentTables m(freqs);
    auto cost = [&m](int a, int b) {
        double w = m.m0(a, b);
        if (w <= 0.0)
            return 0.0;
        double s = m.m1(a, b);
        return s * s / w;
    };
    return detail::run_search(static_cast<int>(freqs.size()), t, Sense::maximize, cost,
                              strategy);
}

inline ThresholdSet otsu_thresholds(const NormalizedHistogram& nh, int t,
                                    SearchStrategy strategy = SearchStrategy::automatic) {
    return ThresholdSet(otsu_search(nh.freqs, t, strategy));
}

// --- Kapur: sum of class entropies ---------------------------------------

/// Sum of Shannon entropies of the per-class normalized distributions.
/// Zero-count bins and empty classes contribute nothing.
inline ObjectiveValue kapur_objective(const NormalizedHistogram& nh,
                                      const ThresholdSet& t_set) {
    const auto& h = nh.freqs;
    std::vector<int> bounds{0};
    bounds.insert(bounds.end(), t_set.begin(), t_set.end());
    bounds.push_back(kLevels);

    double total = 0.0;
    for (std::size_t c = 0; c + 1 < bounds.size(); ++c) {
        double w = 0.0;
        for (int i = bounds[c]; i < bounds[c + 1]; ++i)
            w += h[i];
        if (w <= 0.0)
            continue;
        double entropy = 0.0;
        for (int i = bounds[c]; i < bounds[c + 1]; ++i) {
            if (h[i] > 0.0) {
                double p = h[i] / w;
                entropy -= p * std::log(p);
            }
        }
        total += entropy;
    }
    return {total, Sense::maximize};
}

inline std::vector<int> kapur_search(std::span<const double> freqs, int t,
                                     SearchStrategy strategy = SearchStrategy::automatic) {
    detail::require_enough_nonzero(freqs, t);
    const std::size_t n = freqs.size();
    // prefix sums of mass and of h*ln(h); class entropy = ln(w) - S/w
    std::vector<double> cum0(n + 1, 0.0), cum_hlogh(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        cum0[i + 1] = cum0[i] + freqs[i];
        cum_hlogh[i + 1] =
            cum_hlogh[i] + (freqs[i] > 0.0 ? freqs[i] * std::log(freqs[i]) : 0.0);
    }
    auto cost = [&](int a, int b) {
        double w = cum0[b] - cum0[a];
        if (w <= 0.0)
            return 0.0;
        double s = cum_hlogh[b] - cum_hlogh[a];
        return std::log(w) - s / w;
    };
    return detail::run_search(static_cast<int>(n), t, Sense::maximize, cost, strategy);
}

inline ThresholdSet kapur_thresholds(const NormalizedHistogram& nh, int t,
                                     SearchStrategy strategy = SearchStrategy::automatic) {
    return ThresholdSet(kapur_search(nh.freqs, t, strategy));
}

// --- Minimum cross entropy ------------------------------------------------

namespace detail {

/// Per-class cross-entropy term m1 * ln(m1/m0). A massless class is
/// infeasible; a class whose first moment vanishes (all mass at level 0)
/// takes its continuity limit of zero.
inline double mcet_class_term(double m0, double m1) {
    if (m0 <= 0.0)
        return std::numeric_limits<double>::infinity();
    if (m1 <= 0.0)
        return 0.0;
    return m1 * std::log(m1 / m0);
}

} // namespace detail

/// Direct evaluation of the two-class cross-entropy objective for a single
/// threshold, summing the bins of each side.
inline ObjectiveValue mcet_direct(const NormalizedHistogram& nh, int th) {
    if (th < 1 || th > kLevels - 1)
        throw std::invalid_argument("threshold must lie in [1, 255]");
    const auto& h = nh.freqs;
    double eta = 0.0;
    const int bounds[3] = {0, th, kLevels};
    for (int c = 0; c < 2; ++c) {
        double w = 0.0, s = 0.0;
        for (int i = bounds[c]; i < bounds[c + 1]; ++i) {
            w += h[i];
            s += i * h[i];
        }
        if (w <= 0.0)
            throw UndefinedObjective("cross entropy undefined for a massless class");
        eta += detail::mcet_class_term(w, s);
    }
    return {eta, Sense::minimize};
}

/// Moment-table evaluation of the multilevel cross-entropy objective; each
/// class costs O(1).
inline ObjectiveValue mcet_recursive(const NormalizedHistogram& nh,
                                     const ThresholdSet& t_set) {
    MomentTables m(nh.freqs);
    std::vector<int> bounds{0};
    bounds.insert(bounds.end(), t_set.begin(), t_set.end());
    bounds.push_back(kLevels);

    double eta = 0.0;
    for (std::size_t c = 0; c + 1 < bounds.size(); ++c) {
        double w = m.m0(bounds[c], bounds[c + 1]);
        if (w <= 0.0)
            throw UndefinedObjective("cross entropy undefined for a massless class");
        eta += detail::mcet_class_term(w, m.m1(bounds[c], bounds[c + 1]));
    }
    return {eta, Sense::minimize};
}

inline std::vector<int> mcet_search(std::span<const double> freqs, int t,
                                    SearchStrategy strategy = SearchStrategy::automatic) {
    detail::require_enough_nonzero(freqs, t);
    MomentTables m(freqs);
    auto cost = [&m](int a, int b) {
        return detail::mcet_class_term(m.m0(a, b), m.m1(a, b));
    };
    return detail::run_search(static_cast<int>(freqs.size()), t, Sense::minimize, cost,
                              strategy);
}

inline ThresholdSet mcet_thresholds(const NormalizedHistogram& nh, int t,
                                    SearchStrategy strategy = SearchStrategy::automatic) {
    return ThresholdSet(mcet_search(nh.freqs, t, strategy));
}

} // namespace amtis

#endif
