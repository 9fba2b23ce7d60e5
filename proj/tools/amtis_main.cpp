// Command-line front end: single-image thresholding, corpus benchmarking,
// and histogram plot-data export.

#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "amtis/amtis.hpp"
#include "amtis/baselines.hpp"
#include "amtis/bench.hpp"
#include "amtis/image_io.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitAlgorithm = 3;

struct ThresholdArgs {
    std::string input;
    std::string method = "amtis";
    int t = 2;
    int partitions = 32;
    bool fallback_set_a = false;
    std::string out;
    std::string format = "csv";
};

int cmd_threshold(const ThresholdArgs& args) {
    amtis::GrayImage gray = amtis::load_gray(args.input);

    amtis::BenchConfig cfg;
    cfg.partitions = args.partitions;
    cfg.fallback = args.fallback_set_a ? amtis::CandidateFallback::use_set_a
                                       : amtis::CandidateFallback::error;
    amtis::ThresholdSet thresholds = amtis::detail::compute_thresholds(
        gray, amtis::method_from_string(args.method), args.t, cfg);

    if (args.format == "json") {
        nlohmann::json j;
        j["image"] = args.input;
        j["method"] = args.method;
        j["t"] = args.t;
        j["thresholds"] = thresholds.levels();
        std::cout << j.dump(2) << '\n';
    } else {
        for (int i = 0; i < thresholds.count(); ++i)
            std::cout << (i ? " " : "") << thresholds[i];
        std::cout << '\n';
    }

    if (!args.out.empty()) {
        amtis::GrayImage seg = amtis::apply_thresholds(gray, thresholds);
        fs::path out(args.out);
        if (out.extension() == ".png")
            amtis::write_png(seg, out);
        else
            amtis::write_pgm(seg, out);
    }
    return kExitOk;
}

struct BenchArgs {
    std::string corpus;
    std::string out = "bench_out";
    std::vector<std::string> methods;
    std::vector<int> t_values;
    int repeats = 20;
    int partitions = 32;
    int workers = 1;
    bool fallback_set_a = false;
    std::string format = "csv";
};

int cmd_bench(const BenchArgs& args) {
    amtis::BenchConfig cfg;
    cfg.corpus_dir = args.corpus;
    cfg.output_dir = args.out;
    cfg.repeats = args.repeats;
    cfg.partitions = args.partitions;
    cfg.workers = args.workers;
    cfg.fallback = args.fallback_set_a ? amtis::CandidateFallback::use_set_a
                                       : amtis::CandidateFallback::error;
    if (!args.methods.empty()) {
        cfg.methods.clear();
        for (const std::string& m : args.methods)
            cfg.methods.push_back(amtis::method_from_string(m));
    }
    if (!args.t_values.empty())
        cfg.t_values = args.t_values;

    std::vector<amtis::BenchRecord> records = amtis::run_corpus(cfg);
    if (args.format == "json")
        amtis::write_report_json(records, std::cout);
    else
        amtis::write_report_csv(records, std::cout);

    int failures = 0;
    for (const auto& r : records)
        failures += r.failed() ? 1 : 0;
    std::cerr << records.size() << " records (" << failures << " failed), reports in "
              << args.out << '\n';
    return kExitOk;
}

struct PlotArgs {
    std::string input;
    std::string method;
    int t = 2;
    int partitions = 32;
    std::string out;
};

int cmd_plot_data(const PlotArgs& args) {
    amtis::GrayImage gray = amtis::load_gray(args.input);
    amtis::Histogram hist = amtis::compute_histogram(gray);

    std::vector<int> thresholds;
    if (!args.method.empty()) {
        amtis::BenchConfig cfg;
        cfg.partitions = args.partitions;
        thresholds = amtis::detail::compute_thresholds(
                         gray, amtis::method_from_string(args.method), args.t, cfg)
                         .levels();
    }
    if (args.out.empty())
        amtis::emit_histogram_plot(hist, thresholds, std::cout);
    else
        amtis::emit_histogram_plot(hist, thresholds, fs::path(args.out));
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multilevel image thresholding by histogram sampling, with "
                 "Otsu/Kapur/MCET baselines and a benchmark harness"};
    app.require_subcommand(1);

    ThresholdArgs targs;
    CLI::App* threshold = app.add_subcommand("threshold", "Compute thresholds for one image");
    threshold->add_option("image", targs.input, "input image (PGM/PNG/JPEG)")->required();
    threshold->add_option("--method", targs.method, "amtis|otsu|kapur|mcet")
        ->check(CLI::IsMember({"amtis", "otsu", "kapur", "mcet"}));
    threshold->add_option("--t", targs.t, "number of thresholds")->check(CLI::PositiveNumber);
    threshold->add_option("--partitions", targs.partitions, "histogram partitions for amtis");
    threshold->add_flag("--fallback-set-a", targs.fallback_set_a,
                        "fall back to the valley set when candidates run short");
    threshold->add_option("--out", targs.out, "write the segmented image here (.pgm/.png)");
    threshold->add_option("--format", targs.format, "stdout format")
        ->check(CLI::IsMember({"csv", "json"}));

    BenchArgs bargs;
    CLI::App* bench = app.add_subcommand("bench", "Benchmark a corpus directory");
    bench->add_option("corpus", bargs.corpus, "directory of input images")->required();
    bench->add_option("--out", bargs.out, "output directory for reports and images");
    bench->add_option("--method", bargs.methods, "methods to run (repeatable)")
        ->check(CLI::IsMember({"amtis", "otsu", "kapur", "mcet"}));
    bench->add_option("--t", bargs.t_values, "threshold counts (repeatable)");
    bench->add_option("--repeats", bargs.repeats, "timing repetitions per cell")
        ->check(CLI::PositiveNumber);
    bench->add_option("--partitions", bargs.partitions, "histogram partitions for amtis");
    bench->add_option("--workers", bargs.workers, "parallel worker threads")
        ->check(CLI::PositiveNumber);
    bench->add_flag("--fallback-set-a", bargs.fallback_set_a,
                    "fall back to the valley set when candidates run short");
    bench->add_option("--format", bargs.format, "stdout report format")
        ->check(CLI::IsMember({"csv", "json"}));

    PlotArgs pargs;
    CLI::App* plot = app.add_subcommand("plot-data", "Emit histogram CSV for plotting");
    plot->add_option("image", pargs.input, "input image")->required();
    plot->add_option("--method", pargs.method, "annotate thresholds of this method")
        ->check(CLI::IsMember({"amtis", "otsu", "kapur", "mcet"}));
    plot->add_option("--t", pargs.t, "number of thresholds")->check(CLI::PositiveNumber);
    plot->add_option("--partitions", pargs.partitions, "histogram partitions for amtis");
    plot->add_option("--out", pargs.out, "output CSV path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (threshold->parsed())
            return cmd_threshold(targs);
        if (bench->parsed())
            return cmd_bench(bargs);
        if (plot->parsed())
            return cmd_plot_data(pargs);
    } catch (const amtis::IoError& e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return kExitIo;
    } catch (const amtis::EmptyCorpus& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const amtis::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitAlgorithm;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
