#ifndef AMTIS_BENCH_HPP
#define AMTIS_BENCH_HPP

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include <json.hpp>

#include "amtis/amtis.hpp"
#include "amtis/baselines.hpp"
#include "amtis/errors.hpp"
#include "amtis/histogram.hpp"
#include "amtis/image.hpp"
#include "amtis/image_io.hpp"
#include "amtis/metrics.hpp"

namespace amtis {

enum class Method { amtis, otsu, kapur, mcet };

constexpr std::string_view to_string(Method m) {
    switch (m) {
    case Method::amtis:
        return "amtis";
    case Method::otsu:
        return "otsu";
    case Method::kapur:
        return "kapur";
    case Method::mcet:
        return "mcet";
    }
    return "?";
}

inline Method method_from_string(std::string_view s) {
    if (s == "amtis")
        return Method::amtis;
    if (s == "otsu")
        return Method::otsu;
    if (s == "kapur")
        return Method::kapur;
    if (s == "mcet")
        return Method::mcet;
    throw std::invalid_argument("unknown method: " + std::string(s));
}

struct BenchConfig {
    std::filesystem::path corpus_dir;
    std::filesystem::path output_dir; ///< empty = keep results in memory only
    std::vector<Method> methods{Method::amtis, Method::otsu, Method::kapur, Method::mcet};
    std::vector<int> t_values{2, 3, 4, 5};
    int repeats = 20;
    int partitions = 32;
    int workers = 1;
    CandidateFallback fallback = CandidateFallback::error;
    FsimConfig fsim;
};

/// One benchmark row: a (image, method, t) cell with its timing samples and
/// segmentation quality. A failed algorithm run keeps the row with `error`
/// set and everything else empty.
struct BenchRecord {
    std::string image;
    Method method = Method::amtis;
    int t = 0;
    std::vector<int> thresholds;
    std::vector<double> run_times_s;
    double mean_time_s = 0.0;
    double psnr = std::numeric_limits<double>::quiet_NaN();
    double rmse = std::numeric_limits<double>::quiet_NaN();
    double ssim = std::numeric_limits<double>::quiet_NaN();
    double fsim = std::numeric_limits<double>::quiet_NaN();
    std::optional<double> speedup_vs_otsu;
    std::string error;

    bool failed() const { return !error.empty(); }
};

namespace detail {

/// The timed call for one method: histogram construction plus threshold
/// search, identical shape across methods so timings compare like with
/// like. Decoding stays outside.
inline ThresholdSet compute_thresholds(const GrayImage& gray, Method method, int t,
                                       const BenchConfig& cfg) {
    switch (method) {
    case Method::amtis: {
        AmtisConfig acfg;
        acfg.partitions = cfg.partitions;
        acfg.fallback = cfg.fallback;
        return amtis_thresholds(gray, t, acfg);
    }
    case Method::otsu:
        return otsu_thresholds(normalize(compute_histogram(gray)), t);
    case Method::kapur:
        return kapur_thresholds(normalize(compute_histogram(gray)), t);
    case Method::mcet:
        return mcet_thresholds(normalize(compute_histogram(gray)), t);
    }
    throw std::logic_error("unreachable");
}

inline std::string fmt_double(double v) {
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string join_thresholds(const std::vector<int>& th) {
    std::string out;
    for (std::size_t i = 0; i < th.size(); ++i) {
        if (i)
            out += ';';
        out += std::to_string(th[i]);
    }
    return out;
}

} // namespace detail

/// Histogram CSV annotated with the chosen thresholds: columns
/// level,count,is_threshold, one row per level.
inline void emit_histogram_plot(const Histogram& h, const std::vector<int>& thresholds,
                                std::ostream& os) {
    std::vector<bool> flag(kLevels, false);
    for (int th : thresholds)
        if (th >= 0 && th < kLevels)
            flag[th] = true;
    os << "level,count,is_threshold\n";
    for (int i = 0; i < kLevels; ++i)
        os << i << ',' << h.counts[i] << ',' << (flag[i] ? 1 : 0) << '\n';
}

inline void emit_histogram_plot(const Histogram& h, const std::vector<int>& thresholds,
                                const std::filesystem::path& path) {
    std::ofstream os(path);
    if (!os)
        throw IoError("cannot create " + path.string());
    emit_histogram_plot(h, thresholds, os);
    if (!os)
        throw IoError("failed writing " + path.string());
}

/// Runs one (image, method, t) cell over an already decoded image.
inline BenchRecord run_single(const std::string& name, const GrayImage& gray, Method method,
                              int t, const BenchConfig& cfg) {
    BenchRecord rec;
    rec.image = name;
    rec.method = method;
    rec.t = t;

    ThresholdSet thresholds{255};
    try {
        thresholds = detail::compute_thresholds(gray, method, t, cfg); // warmup + result
    } catch (const Error& e) {
        rec.error = e.what();
        return rec;
    }
    rec.thresholds = thresholds.levels();

    rec.run_times_s.reserve(cfg.repeats);
    for (int r = 0; r < cfg.repeats; ++r) {
        auto t0 = std::chrono::steady_clock::now();
        ThresholdSet result = detail::compute_thresholds(gray, method, t, cfg);
        auto t1 = std::chrono::steady_clock::now();
        rec.run_times_s.push_back(std::chrono::duration<double>(t1 - t0).count());
        if (!(result == thresholds))
            throw std::logic_error("nondeterministic threshold result");
    }
    double sum = 0.0;
    for (double s : rec.run_times_s)
        sum += s;
    rec.mean_time_s = sum / static_cast<double>(rec.run_times_s.size());

    GrayImage seg = apply_thresholds(gray, thresholds);
    QualityReport q = quality_report(gray, seg, cfg.fsim);
    rec.psnr = q.psnr;
    rec.rmse = q.rmse;
    rec.ssim = q.ssim;
    rec.fsim = q.fsim;

    if (!cfg.output_dir.empty()) {
        std::filesystem::create_directories(cfg.output_dir);
        std::string base = name + "_" + std::string(to_string(method)) + "_t" + std::to_string(t);
        write_pgm(seg, cfg.output_dir / (base + ".pgm"));
        write_png(seg, cfg.output_dir / (base + ".png"));
        emit_histogram_plot(compute_histogram(gray), rec.thresholds,
                            cfg.output_dir / (base + "_hist.csv"));
    }
    return rec;
}

inline BenchRecord run_single(const std::filesystem::path& image_path, Method method, int t,
                              const BenchConfig& cfg) {
    GrayImage gray = load_gray(image_path);
    return run_single(image_path.stem().string(), gray, method, t, cfg);
}

/// CSV report, one row per record. Failed cells leave the value columns
/// empty; infinite PSNR prints as "inf".
inline void write_report_csv(const std::vector<BenchRecord>& records, std::ostream& os) {
    os << "image,method,t,thresholds,mean_time_s,psnr,rmse,ssim,fsim,speedup_vs_otsu\n";
    for (const BenchRecord& r : records) {
        os << r.image << ',' << to_string(r.method) << ',' << r.t << ',';
        if (!r.failed()) {
            os << detail::join_thresholds(r.thresholds) << ','
               << detail::fmt_double(r.mean_time_s) << ',' << detail::fmt_double(r.psnr) << ','
               << detail::fmt_double(r.rmse) << ',' << detail::fmt_double(r.ssim) << ','
               << detail::fmt_double(r.fsim) << ',';
            if (r.speedup_vs_otsu)
                os << detail::fmt_double(*r.speedup_vs_otsu);
        } else {
            os << ",,,,,,";
        }
        os << '\n';
    }
}

inline nlohmann::json to_json(const BenchRecord& r) {
    nlohmann::json j;
    j["image"] = r.image;
    j["method"] = std::string(to_string(r.method));
    j["t"] = r.t;
    if (r.failed()) {
        j["error"] = r.error;
        return j;
    }
    j["thresholds"] = r.thresholds;
    j["mean_time_s"] = r.mean_time_s;
    j["per_run_times_s"] = r.run_times_s;
    j["psnr"] = std::isinf(r.psnr) ? nlohmann::json("inf") : nlohmann::json(r.psnr);
    j["rmse"] = r.rmse;
    j["ssim"] = r.ssim;
    j["fsim"] = r.fsim;
    if (r.speedup_vs_otsu)
        j["speedup_vs_otsu"] = *r.speedup_vs_otsu;
    else
        j["speedup_vs_otsu"] = nullptr;
    return j;
}

inline void write_report_json(const std::vector<BenchRecord>& records, std::ostream& os) {
    nlohmann::json arr = nlohmann::json::array();
    for (const BenchRecord& r : records)
        arr.push_back(to_json(r));
    os << arr.dump(2) << '\n';
}

/// Runs the whole corpus: every decodable image x method x t, in
/// deterministic row order (image name, method name, t ascending). Rows are
/// computed by `workers` threads, each record wholly on one thread. The
/// speed-up column relates each row's mean time to the Otsu row of the same
/// image and t. Reports are written to the output directory when one is
/// configured.
inline std::vector<BenchRecord> run_corpus(const BenchConfig& cfg) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(cfg.corpus_dir))
        throw IoError("corpus directory not found: " + cfg.corpus_dir.string());

    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(cfg.corpus_dir)) {
        if (!entry.is_regular_file())
            continue;
        std::string ext = entry.path().extension().string();
        std::transform(ext.begin(), ext.end(), ext.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        if (ext == ".pgm" || ext == ".png" || ext == ".jpg" || ext == ".jpeg")
            files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());

    std::vector<std::pair<std::string, GrayImage>> images;
    for (const fs::path& f : files) {
        try {
            images.emplace_back(f.stem().string(), load_gray(f));
        } catch (const IoError& e) {
            std::cerr << "skipping " << f << ": " << e.what() << '\n';
        }
    }
    if (images.empty())
        throw EmptyCorpus("no decodable images in " + cfg.corpus_dir.string());

    std::vector<Method> methods = cfg.methods;
    std::sort(methods.begin(), methods.end(), [](Method a, Method b) {
        return to_string(a) < to_string(b);
    });
    methods.erase(std::unique(methods.begin(), methods.end()), methods.end());
    std::vector<int> ts = cfg.t_values;
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());

    struct Job {
        std::size_t image;
        Method method;
        int t;
    };
    std::vector<Job> jobs;
    for (std::size_t i = 0; i < images.size(); ++i)
        for (Method m : methods)
            for (int t : ts)
                jobs.push_back({i, m, t});

    if (!cfg.output_dir.empty())
        std::filesystem::create_directories(cfg.output_dir);

    std::vector<BenchRecord> records(jobs.size());
    std::atomic<std::size_t> next{0};
    auto work = [&]() {
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= jobs.size())
                break;
            const Job& job = jobs[i];
            records[i] = run_single(images[job.image].first, images[job.image].second,
                                    job.method, job.t, cfg);
        }
    };
    int workers = std::clamp<int>(cfg.workers, 1, static_cast<int>(jobs.size()));
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w)
            pool.emplace_back(work);
        for (auto& th : pool)
            th.join();
    }

    std::map<std::pair<std::string, int>, double> otsu_time;
    for (const BenchRecord& r : records)
        if (r.method == Method::otsu && !r.failed())
            otsu_time[{r.image, r.t}] = r.mean_time_s;
    for (BenchRecord& r : records) {
        if (r.failed())
            continue;
        auto it = otsu_time.find({r.image, r.t});
        if (it != otsu_time.end() && r.mean_time_s > 0.0)
            r.speedup_vs_otsu = it->second / r.mean_time_s;
    }

    if (!cfg.output_dir.empty()) {
        std::ofstream csv(cfg.output_dir / "report.csv");
        if (!csv)
            throw IoError("cannot create report.csv");
        write_report_csv(records, csv);
        std::ofstream json(cfg.output_dir / "report.json");
        if (!json)
            throw IoError("cannot create report.json");
        write_report_json(records, json);
    }
    return records;
}

} // namespace amtis

#endif
