// Command implementations behind the CLI: single-image segmentation, batch
// evaluation over a dataset tree, standalone scoring, overlay rendering,
// and the phantom corpus writer.

#pragma once

#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "scs/dataset.hpp"
#include "scs/image_io.hpp"
#include "scs/metrics.hpp"
#include "scs/params.hpp"
#include "scs/phantom.hpp"
#include "scs/segmentation.hpp"

namespace scs {

struct RunConfig {
    ScsParams params;
    fs::path out_dir = ".";
    DatasetLayout layout = DatasetLayout::Csv;
    std::optional<fs::path> report_path; // defaults to <out_dir>/report.csv
    bool overlay = false;
    int jobs = 1;
};

// Figure-style comparison: white = TP, red = FP, green = FN, TN untouched.
inline RgbImage render_overlay(const RgbImage& image, const BinaryMask& pred,
                               const BinaryMask& gt) {
    require_same_grid(image.width(), image.height(), pred.width(), pred.height(), "render_overlay");
    require_same_grid(image.width(), image.height(), gt.width(), gt.height(), "render_overlay");
    RgbImage out = image;
    for (int r = 0; r < image.height(); ++r)
        for (int c = 0; c < image.width(); ++c) {
            const bool p = pred.at(r, c), g = gt.at(r, c);
            if (p && g) out.set(r, c, {255, 255, 255});
            else if (p && !g) out.set(r, c, {255, 0, 0});
            else if (!p && g) out.set(r, c, {0, 255, 0});
        }
    return out;
}

namespace detail {

inline void draw_segment(RgbImage& img, PointF a, PointF b, Rgb color, int thickness) {
    const double len = std::hypot(b.x - a.x, b.y - a.y);
    const int steps = std::max(1, static_cast<int>(std::ceil(len * 2)));
    const int rad = std::max(0, thickness / 2);
    for (int s = 0; s <= steps; ++s) {
        const double t = static_cast<double>(s) / steps;
        const int cc = static_cast<int>(std::lround(a.x + t * (b.x - a.x)));
        const int rr = static_cast<int>(std::lround(a.y + t * (b.y - a.y)));
        for (int dr = -rad; dr <= rad; ++dr)
            for (int dc = -rad; dc <= rad; ++dc) {
                const int pr = rr + dr, pc = cc + dc;
                if (pr >= 0 && pr < img.height() && pc >= 0 && pc < img.width())
                    img.set(pr, pc, color);
            }
    }
}

inline RgbImage draw_boundary(const RgbImage& image, const std::vector<PointF>& polygon) {
    RgbImage out = image;
    for (std::size_t i = 0; i < polygon.size(); ++i)
        draw_segment(out, polygon[i], polygon[(i + 1) % polygon.size()], {0, 80, 255}, 2);
    return out;
}

inline std::string format_value(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

inline std::string format_metric(const std::optional<double>& v) {
    return v ? format_value(*v) : std::string();
}

} // namespace detail

struct SegmentOutcome {
    LesionResult result;
    fs::path mask_path;
    fs::path boundary_path;
    fs::path report_path;
};

// Writes <id>_mask.png, <id>_boundary.png and a small text report next to
// each other under config.out_dir. The input is fully decoded and segmented
// before anything is written, so failures leave no partial outputs.
inline SegmentOutcome cmd_segment(const fs::path& image_path, const RunConfig& config) {
    const RgbImage image = load_image(image_path);
    const std::string id = image_path.stem().string();

    SegmentOutcome outcome;
    outcome.result = segment(image, config.params);

    fs::create_directories(config.out_dir);
    outcome.mask_path = config.out_dir / (id + "_mask.png");
    outcome.boundary_path = config.out_dir / (id + "_boundary.png");
    outcome.report_path = config.out_dir / (id + "_report.txt");

    save_png_mask(outcome.mask_path, outcome.result.mask_full);
    save_png_rgb(outcome.boundary_path, detail::draw_boundary(image, outcome.result.boundary));

    std::ofstream report(outcome.report_path);
    report << "id=" << id << "\n";
    report << "low_confidence=" << (outcome.result.low_confidence ? 1 : 0) << "\n";
    for (const auto& [stage, ms] : outcome.result.trace.timings_ms)
        report << "stage_ms " << stage << "=" << detail::format_value(ms) << "\n";
    return outcome;
}

struct BatchRow {
    std::string id;
    std::optional<MetricsReport> metrics; // present when gt exists and run succeeded
    std::optional<bool> low_confidence;   // absent on failure
    double ms = 0;
    bool failed = false;
    std::string error;
};

struct BatchResult {
    std::vector<BatchRow> rows;
    AggregateReport summary; // over rows with metrics
    int succeeded = 0;
    int failed = 0;
    int low_confidence_count = 0;
    fs::path report_path;
};

inline constexpr const char* kCsvHeader = "id,ac,se,sp,di,ja,p,e,hd,xor,low_confidence,ms";

namespace detail {

inline std::string csv_row(const BatchRow& row) {
    std::ostringstream out;
    out << row.id;
    for (int i = 0; i < MetricsReport::kCount; ++i) {
        out << ',';
        if (row.metrics) out << format_metric(row.metrics->field(i));
    }
    out << ',';
    if (row.low_confidence) out << (*row.low_confidence ? 1 : 0);
    out << ',';
    if (!row.failed) out << format_value(row.ms);
    return out.str();
}

} // namespace detail

// Segments every discovered pair with a worker pool, writes one mask PNG per
// image plus a CSV report (per-image rows in manifest order, then a summary
// row of means). Per-image failures are recorded, not fatal.
inline BatchResult cmd_batch(const fs::path& root, const RunConfig& config) {
    const Manifest manifest = discover(root, config.layout);
    fs::create_directories(config.out_dir);

    std::vector<BatchRow> rows(manifest.samples.size());
    std::atomic<std::size_t> next{0};
    std::mutex log_mutex;

    auto worker = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= manifest.samples.size()) break;
            const SamplePair& sample = manifest.samples[i];
            BatchRow& row = rows[i];
            row.id = sample.id;
            const auto t0 = std::chrono::steady_clock::now();
            try {
                const RgbImage image = load_image(sample.image_path);
                const LesionResult result = segment(image, config.params);
                row.low_confidence = result.low_confidence;
                save_png_mask(config.out_dir / (sample.id + "_mask.png"), result.mask_full);

                if (sample.gt_path) {
                    const BinaryMask gt = load_mask(*sample.gt_path);
                    if (gt.width() != result.mask_full.width() ||
                        gt.height() != result.mask_full.height())
                        throw ImageIoError("ground truth dimensions do not match image for id " +
                                           sample.id);
                    row.metrics = compute_metrics(confusion(result.mask_full, gt));
                    if (config.overlay)
                        save_png_rgb(config.out_dir / (sample.id + "_overlay.png"),
                                     render_overlay(image, result.mask_full, gt));
                }
            } catch (const std::exception& e) {
                row.failed = true;
                row.error = e.what();
                std::lock_guard lock(log_mutex);
                std::fprintf(stderr, "error: %s: %s\n", sample.id.c_str(), e.what());
            }
            const auto t1 = std::chrono::steady_clock::now();
            row.ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        }
    };

    const int jobs = std::max(1, config.jobs);
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < jobs; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    BatchResult result;
    result.rows = std::move(rows);
    std::vector<MetricsReport> scored;
    for (const BatchRow& row : result.rows) {
        if (row.failed) ++result.failed;
        else ++result.succeeded;
        if (row.metrics) scored.push_back(*row.metrics);
        if (row.low_confidence && *row.low_confidence) ++result.low_confidence_count;
    }
    if (!scored.empty()) result.summary = aggregate(scored);

    result.report_path = config.report_path.value_or(config.out_dir / "report.csv");
    std::ofstream csv(result.report_path);
    csv << kCsvHeader << "\n";
    double ms_sum = 0;
    for (const BatchRow& row : result.rows) {
        csv << detail::csv_row(row) << "\n";
        ms_sum += row.ms;
    }
    if (!scored.empty()) {
        // Summary row: metric means, low-confidence count, mean runtime.
        csv << "mean";
        for (int i = 0; i < MetricsReport::kCount; ++i)
            csv << ',' << detail::format_metric(result.summary.mean.field(i));
        csv << ',' << result.low_confidence_count << ','
            << detail::format_value(ms_sum / static_cast<double>(result.rows.size())) << "\n";
    }
    return result;
}

// Prints the nine metrics as name=value lines; undefined metrics as name=NA.
inline MetricsReport cmd_eval(const fs::path& pred_path, const fs::path& gt_path,
                              std::string& out_text) {
    const BinaryMask pred = load_mask(pred_path);
    const BinaryMask gt = load_mask(gt_path);
    if (pred.width() != gt.width() || pred.height() != gt.height()) {
        std::ostringstream msg;
        msg << "dimension mismatch: prediction is " << pred.width() << "x" << pred.height()
            << ", ground truth is " << gt.width() << "x" << gt.height();
        throw std::invalid_argument(msg.str());
    }
    const MetricsReport m = compute_metrics(confusion(pred, gt));
    std::ostringstream out;
    for (int i = 0; i < MetricsReport::kCount; ++i) {
        out << MetricsReport::name(i) << '='
            << (m.field(i) ? detail::format_value(*m.field(i)) : std::string("NA")) << "\n";
    }
    out_text = out.str();
    return m;
}

// Writes phantom_###.png / phantom_###_gt.png plus a manifest.csv that the
// batch command consumes with the csv layout.
inline fs::path gen_phantoms(int count, std::uint32_t seed, const fs::path& out_dir) {
    if (count < 1) throw std::invalid_argument("gen_phantoms: count must be >= 1");
    fs::create_directories(out_dir);
    const fs::path manifest_path = out_dir / "manifest.csv";
    std::ofstream manifest(manifest_path);
    manifest << "id,image,gt\n";
    for (int i = 0; i < count; ++i) {
        const Phantom ph = generate_phantom(corpus_phantom_spec(seed, i));
        char name[32];
        std::snprintf(name, sizeof name, "phantom_%03d", i);
        const std::string image_name = std::string(name) + ".png";
        const std::string gt_name = std::string(name) + "_gt.png";
        save_png_rgb(out_dir / image_name, ph.image);
        save_png_mask(out_dir / gt_name, ph.ground_truth);
        manifest << name << ',' << image_name << ',' << gt_name << "\n";
    }
    return manifest_path;
}

} // namespace scs
