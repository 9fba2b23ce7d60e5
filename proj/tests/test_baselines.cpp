#include <catch_amalgamated.hpp>

#include <array>
#include <cmath>
#include <random>
#include <set>
#include <span>
#include <vector>

#include "amtis/baselines.hpp"
#include "support.hpp"

using namespace amtis;

namespace {

NormalizedHistogram nh_from(const std::vector<double>& freqs) {
    NormalizedHistogram nh;
    for (int i = 0; i < kLevels && i < static_cast<int>(freqs.size()); ++i)
        nh.freqs[i] = freqs[i];
    return nh;
}

NormalizedHistogram two_spikes(int a, int b) {
    NormalizedHistogram nh;
    nh.freqs[a] = 0.5;
    nh.freqs[b] = 0.5;
    return nh;
}

NormalizedHistogram uniform_nh() {
    NormalizedHistogram nh;
    nh.freqs.fill(1.0 / 256.0);
    return nh;
}

// two-class Otsu oracle straight from the textbook form
double otsu_two_class(const NormalizedHistogram& nh, int th) {
    double w0 = 0, w1 = 0, s0 = 0, s1 = 0;
    for (int i = 0; i < th; ++i) {
        w0 += nh.freqs[i];
        s0 += i * nh.freqs[i];
    }
    for (int i = th; i < kLevels; ++i) {
        w1 += nh.freqs[i];
        s1 += i * nh.freqs[i];
    }
    if (w0 <= 0 || w1 <= 0)
        return 0.0;
    double mu0 = s0 / w0, mu1 = s1 / w1;
    return w0 * w1 * (mu1 - mu0) * (mu1 - mu0);
}

// brute-force single-threshold argbest over a per-threshold objective
template <class F>
int brute_force_best(const F& objective, bool maximize) {
    int best_th = -1;
    double best = 0.0;
    for (int th = 1; th <= 255; ++th) {
        double v;
        try {
            v = objective(th);
        } catch (const Error&) {
            continue;
        }
        if (!std::isfinite(v))
            continue;
        if (best_th < 0 || (maximize ? v > best : v < best)) {
            best = v;
            best_th = th;
        }
    }
    REQUIRE(best_th > 0);
    return best_th;
}

} // namespace

TEST_CASE("moment tables equal direct sums") {
    std::mt19937 rng(501);
    std::vector<double> freqs = testsupport::random_freqs(rng, 64, false);
    MomentTables m(freqs);
    REQUIRE(m.levels() == 64);
    for (int a = 0; a < 64; ++a) {
        for (int b = a + 1; b <= 64; ++b) {
            double d0 = 0, d1 = 0;
            for (int i = a; i < b; ++i) {
                d0 += freqs[i];
                d1 += i * freqs[i];
            }
            REQUIRE(std::abs(m.m0(a, b) - d0) < 1e-12);
            REQUIRE(std::abs(m.m1(a, b) - d1) < 1e-12);
        }
    }
    NormalizedHistogram nh = normalize(testsupport::random_histogram(rng));
    MomentTables full(nh.freqs);
    CHECK(std::abs(full.cum0[256] - 1.0) < 1e-9);
}

TEST_CASE("otsu objective") {
    SECTION("mass in one bin has zero spread") {
        NormalizedHistogram nh;
        nh.freqs[77] = 1.0;
        CHECK(otsu_objective(nh, ThresholdSet{50}).value == 0.0);
        CHECK(otsu_objective(nh, ThresholdSet{100, 200}).value == 0.0);
    }
    SECTION("two equal spikes, hand value") {
        ObjectiveValue v = otsu_objective(two_spikes(50, 200), ThresholdSet{100});
        CHECK(v.sense == Sense::maximize);
        CHECK(v.value == Catch::Approx(5625.0).epsilon(1e-12));
    }
    SECTION("t = 1 equals the two-class formula") {
        std::mt19937 rng(502);
        for (int round = 0; round < 30; ++round) {
            NormalizedHistogram nh = normalize(testsupport::random_histogram(rng));
            std::uniform_int_distribution<int> th_dist(1, 255);
            int th = th_dist(rng);
            REQUIRE(otsu_objective(nh, ThresholdSet{th}).value ==
                    Catch::Approx(otsu_two_class(nh, th)).margin(1e-9));
        }
    }
    SECTION("between plus within equals total variance") {
        std::mt19937 rng(503);
        for (int round = 0; round < 30; ++round) {
            NormalizedHistogram nh = normalize(testsupport::random_histogram(rng));
            std::set<int> picks;
            std::uniform_int_distribution<int> th_dist(1, 255);
            while (static_cast<int>(picks.size()) < 1 + round % 4)
                picks.insert(th_dist(rng));
            ThresholdSet t_set(std::vector<int>(picks.begin(), picks.end()));

            double mu_t = 0, sigma_t = 0;
            for (int i = 0; i < kLevels; ++i)
                mu_t += i * nh.freqs[i];
            for (int i = 0; i < kLevels; ++i)
                sigma_t += nh.freqs[i] * (i - mu_t) * (i - mu_t);

            std::vector<int> bounds{0};
            bounds.insert(bounds.end(), t_set.begin(), t_set.end());
            bounds.push_back(256);
            double sigma_w = 0;
            for (std::size_t c = 0; c + 1 < bounds.size(); ++c) {
                double w = 0, s = 0;
                for (int i = bounds[c]; i < bounds[c + 1]; ++i) {
                    w += nh.freqs[i];
                    s += i * nh.freqs[i];
                }
                if (w <= 0)
                    continue;
                double mu = s / w;
                for (int i = bounds[c]; i < bounds[c + 1]; ++i)
                    sigma_w += nh.freqs[i] * (i - mu) * (i - mu);
            }
            double sigma_b = otsu_objective(nh, t_set).value;
            REQUIRE(sigma_b + sigma_w == Catch::Approx(sigma_t).margin(1e-9));
        }
    }
}

TEST_CASE("otsu threshold search") {
    SECTION("two equal spikes tie-break to the smallest") {
        NormalizedHistogram nh = two_spikes(50, 200);
        int oracle = brute_force_best(
            [&](int th) { return otsu_objective(nh, ThresholdSet{th}).value; }, true);
        REQUIRE(oracle == 51);
        CHECK(otsu_thresholds(nh, 1).levels() == std::vector<int>{51});
    }
    SECTION("uniform histogram splits in the middle") {
        NormalizedHistogram nh = uniform_nh();
        int oracle = brute_force_best(
            [&](int th) { return otsu_objective(nh, ThresholdSet{th}).value; }, true);
        REQUIRE(oracle == 128);
        CHECK(otsu_thresholds(nh, 1).levels() == std::vector<int>{128});
    }
    SECTION("degenerate histograms are rejected") {
        NormalizedHistogram nh;
        nh.freqs[10] = 1.0;
        CHECK_THROWS_AS(otsu_thresholds(nh, 1), DegenerateHistogram);
        NormalizedHistogram nh2 = two_spikes(10, 20);
        CHECK_THROWS_AS(otsu_thresholds(nh2, 2), DegenerateHistogram);
    }
    SECTION("DP equals exhaustive on random histograms") {
        std::mt19937 rng(504);
        for (int round = 0; round < 20; ++round) {
            NormalizedHistogram nh = normalize(testsupport::random_histogram(rng));
            for (int t : {1, 2}) {
                auto ex = otsu_search(nh.freqs, t, SearchStrategy::exhaustive);
                auto dp = otsu_search(nh.freqs, t, SearchStrategy::dynamic_programming);
                REQUIRE(ex == dp);
            }
        }
    }
}

TEST_CASE("kapur objective") {
    SECTION("single busy bin") {
        NormalizedHistogram nh;
        nh.freqs[30] = 1.0;
        CHECK(kapur_objective(nh, ThresholdSet{100}).value == 0.0);
    }
    SECTION("uniform histogram, closed form") {
        double v = kapur_objective(uniform_nh(), ThresholdSet{128}).value;
        CHECK(v == Catch::Approx(2.0 * std::log(128.0)).epsilon(1e-12));
        CHECK(v == Catch::Approx(9.7041).margin(5e-5));
    }
    SECTION("matches an independent summation") {
        std::mt19937 rng(505);
        for (int round = 0; round < 30; ++round) {
            NormalizedHistogram nh = normalize(testsupport::random_histogram(rng));
            std::uniform_int_distribution<int> th_dist(1, 254);
            int th1 = th_dist(rng);
            int th2 = th1 + 1 + (th_dist(rng) % (255 - th1));
            ThresholdSet t_set{th1, th2};

            double expect = 0.0;
            std::vector<std::pair<int, int>> classes{{0, th1}, {th1, th2}, {th2, 256}};
            for (auto [lo, hi] : classes) {
                double w = 0;
                for (int i = lo; i < hi; ++i)
                    w += nh.freqs[i];
                if (w <= 0)
                    continue;
                for (int i = lo; i < hi; ++i)
                    if (nh.freqs[i] > 0)
                        expect -= nh.freqs[i] / w * std::log(nh.freqs[i] / w);
            }
            REQUIRE(kapur_objective(nh, t_set).value == Catch::Approx(expect).margin(1e-9));
        }
    }
}

TEST_CASE("kapur threshold search") {
    SECTION("uniform histogram picks the midpoint") {
        NormalizedHistogram nh = uniform_nh();
        int oracle = brute_force_best(
            [&](int th) { return kapur_objective(nh, ThresholdSet{th}).value; }, true);
        REQUIRE(oracle == 128);
        CHECK(kapur_thresholds(nh, 1).levels() == std::vector<int>{128});
    }
    SECTION("single spike is degenerate") {
        NormalizedHistogram nh;
        nh.freqs[99] = 1.0;
        CHECK_THROWS_AS(kapur_thresholds(nh, 1), DegenerateHistogram);
    }
    SECTION("DP equals exhaustive on random histograms") {
        std::mt19937 rng(506);
        for (int round = 0; round < 20; ++round) {
            NormalizedHistogram nh = normalize(testsupport::random_histogram(rng));
            for (int t : {1, 2}) {
                auto ex = kapur_search(nh.freqs, t, SearchStrategy::exhaustive);
                auto dp = kapur_search(nh.freqs, t, SearchStrategy::dynamic_programming);
                REQUIRE(ex == dp);
            }
        }
    }
}

TEST_CASE("cross entropy objectives") {
    SECTION("direct and moment forms agree on the uniform histogram") {
        NormalizedHistogram nh = uniform_nh();
        double direct = mcet_direct(nh, 128).value;
        double recursive = mcet_recursive(nh, ThresholdSet{128}).value;
        REQUIRE(direct == Catch::Approx(recursive).epsilon(1e-9));

        // closed form from the class moments
        double m1_low = 0, m1_high = 0;
        for (int i = 0; i < 128; ++i)
            m1_low += i / 256.0;
        for (int i = 128; i < 256; ++i)
            m1_high += i / 256.0;
        double expect = m1_low * std::log(m1_low / 0.5) + m1_high * std::log(m1_high / 0.5);
        REQUIRE(direct == Catch::Approx(expect).epsilon(1e-12));
    }
    SECTION("massless side is undefined") {
        NormalizedHistogram nh;
        nh.freqs[200] = 1.0;
        CHECK_THROWS_AS(mcet_direct(nh, 100), UndefinedObjective);
        CHECK_THROWS_AS(mcet_recursive(nh, ThresholdSet{100}), UndefinedObjective);
        CHECK_THROWS_AS(mcet_recursive(nh, ThresholdSet{100, 210}), UndefinedObjective);
    }
    SECTION("direct equals recursive for single thresholds") {
        std::mt19937 rng(507);
        for (int round = 0; round < 100; ++round) {
            NormalizedHistogram nh = normalize(testsupport::random_positive_histogram(rng));
            std::uniform_int_distribution<int> th_dist(1, 255);
            int th = th_dist(rng);
            double a = mcet_direct(nh, th).value;
            double b = mcet_recursive(nh, ThresholdSet{th}).value;
            REQUIRE(a == Catch::Approx(b).epsilon(1e-9));
        }
    }
    SECTION("threshold argument is validated") {
        CHECK_THROWS_AS(mcet_direct(uniform_nh(), 0), std::invalid_argument);
        CHECK_THROWS_AS(mcet_direct(uniform_nh(), 256), std::invalid_argument);
    }
}

TEST_CASE("mcet threshold search") {
    SECTION("bimodal spikes split between the modes") {
        NormalizedHistogram nh;
        nh.freqs[60] = 0.4;
        nh.freqs[61] = 0.1;
        nh.freqs[180] = 0.1;
        nh.freqs[181] = 0.4;
        int oracle = brute_force_best([&](int th) { return mcet_direct(nh, th).value; }, false);
        CHECK(mcet_thresholds(nh, 1).levels() == std::vector<int>{oracle});
        CHECK((oracle > 61 && oracle <= 180));
    }
    SECTION("uniform histogram matches the brute-force scan") {
        NormalizedHistogram nh = uniform_nh();
        int oracle = brute_force_best([&](int th) { return mcet_direct(nh, th).value; }, false);
        CHECK(mcet_thresholds(nh, 1).levels() == std::vector<int>{oracle});
    }
    SECTION("DP equals exhaustive on strictly positive histograms") {
        std::mt19937 rng(508);
        for (int round = 0; round < 20; ++round) {
            NormalizedHistogram nh = normalize(testsupport::random_positive_histogram(rng));
            for (int t : {1, 2}) {
                auto ex = mcet_search(nh.freqs, t, SearchStrategy::exhaustive);
                auto dp = mcet_search(nh.freqs, t, SearchStrategy::dynamic_programming);
                REQUIRE(ex == dp);
            }
        }
    }
}

TEST_CASE("positive scaling of counts leaves all thresholds unchanged") {
    std::mt19937 rng(509);
    for (int round = 0; round < 10; ++round) {
        Histogram h = testsupport::random_positive_histogram(rng, 100);
        for (std::uint64_t scale : {2ull, 7ull, 40ull}) {
            std::array<std::uint64_t, kLevels> scaled{};
            for (int i = 0; i < kLevels; ++i)
                scaled[i] = h.counts[i] * scale;
            NormalizedHistogram a = normalize(h);
            NormalizedHistogram b = normalize(Histogram(scaled));
            for (int t : {1, 2, 3}) {
                REQUIRE(otsu_thresholds(a, t) == otsu_thresholds(b, t));
                REQUIRE(kapur_thresholds(a, t) == kapur_thresholds(b, t));
                REQUIRE(mcet_thresholds(a, t) == mcet_thresholds(b, t));
            }
        }
    }
}

TEST_CASE("searches at reduced widths") {
    std::mt19937 rng(510);
    for (int round = 0; round < 10; ++round) {
        std::vector<double> freqs = testsupport::random_freqs(rng, 32, true);
        for (int t : {1, 2, 3}) {
            auto ex = otsu_search(freqs, t, SearchStrategy::exhaustive);
            auto dp = otsu_search(freqs, t, SearchStrategy::dynamic_programming);
            REQUIRE(ex == dp);
            REQUIRE(static_cast<int>(ex.size()) == t);
            for (int th : ex)
                REQUIRE((th >= 1 && th <= 31));
        }
    }
}
