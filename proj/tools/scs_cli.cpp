// Command-line front end: segment, batch, eval, gen-phantoms.

#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "scs/runner.hpp"

namespace {

// Shared parameter flags. Config-file keys are identical to the flag names;
// precedence is defaults < config file < command line.
void add_param_options(CLI::App& cmd, scs::RunConfig& config) {
    auto& p = config.params;
    cmd.set_config("--config");
    cmd.add_option("--maxdim", p.max_dim, "Larger image dimension after downscaling")
        ->check(CLI::Range(16, 10000));
    cmd.add_option("--colnum", p.palette_size, "Color budget for quantization")
        ->check(CLI::Range(2, 256));
    cmd.add_option("--tc", p.color_threshold, "Color-distance spread threshold");
    cmd.add_option("--tn", p.kernel_min_salient, "Salient-pixel count that makes a region kernel");
    cmd.add_option("--theta1", p.min_area_frac, "Minimum peripheral area as a fraction of minsize");
    cmd.add_option("--ts", p.transition_saliency, "Saliency below which pixels join the transition band");
    cmd.add_option("--theta2", p.transition_color_frac, "Color-distance fraction kept in the band");
    cmd.add_flag("--no-hull", [&p](std::int64_t) { p.compute_hull = false; },
                 "Skip the final convex hull");
    cmd.add_flag("--multi-lesion", [&p](std::int64_t) { p.single_lesion = false; },
                 "Keep all components instead of the largest");
    cmd.add_option("--seed", p.seed, "Quantizer seed");
    cmd.add_option("--jobs", config.jobs, "Worker threads for batch runs")->check(CLI::Range(1, 256));
    cmd.add_option("--out", config.out_dir, "Output directory");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Saliency- and color-based skin lesion segmentation"};
    app.require_subcommand(1);

    scs::RunConfig config;
    std::string image_path, batch_root, pred_path, gt_path;
    std::string layout_name = "csv";
    int phantom_count = 50;
    std::uint32_t phantom_seed = 1;
    std::string phantom_out = "phantoms";

    CLI::App* seg = app.add_subcommand("segment", "Segment a single image");
    seg->add_option("image", image_path, "Input image (png/jpeg/bmp)")->required();
    add_param_options(*seg, config);

    CLI::App* batch = app.add_subcommand("batch", "Segment and score a dataset tree");
    batch->add_option("root", batch_root, "Dataset root (or manifest.csv for the csv layout)")
        ->required();
    batch->add_option("--layout", layout_name, "Dataset layout: ph2, isic, or csv")
        ->check(CLI::IsMember({"ph2", "isic", "csv"}));
    batch->add_option("--report", config.report_path, "CSV report path");
    batch->add_flag("--overlay", config.overlay, "Write TP/FP/FN overlay PNGs");
    add_param_options(*batch, config);

    CLI::App* eval = app.add_subcommand("eval", "Score a predicted mask against ground truth");
    eval->add_option("pred", pred_path, "Predicted mask")->required();
    eval->add_option("gt", gt_path, "Ground-truth mask")->required();

    CLI::App* gen = app.add_subcommand("gen-phantoms", "Generate a synthetic phantom corpus");
    gen->add_option("--count", phantom_count, "Number of phantoms")->check(CLI::Range(1, 100000));
    gen->add_option("--seed", phantom_seed, "Corpus seed");
    gen->add_option("--out", phantom_out, "Output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (seg->parsed()) {
            const scs::SegmentOutcome outcome = scs::cmd_segment(image_path, config);
            if (outcome.result.low_confidence)
                std::fprintf(stderr, "warning: low-confidence result (fallback shape emitted)\n");
            std::printf("mask: %s\nboundary: %s\nreport: %s\n", outcome.mask_path.c_str(),
                        outcome.boundary_path.c_str(), outcome.report_path.c_str());
        } else if (batch->parsed()) {
            config.layout = scs::layout_from_name(layout_name);
            const scs::BatchResult result = scs::cmd_batch(batch_root, config);
            std::printf("processed %d image(s), %d failed, report: %s\n", result.succeeded,
                        result.failed, result.report_path.c_str());
            if (result.succeeded == 0) return 1;
        } else if (eval->parsed()) {
            std::string text;
            scs::cmd_eval(pred_path, gt_path, text);
            std::fputs(text.c_str(), stdout);
        } else if (gen->parsed()) {
            const auto manifest = scs::gen_phantoms(phantom_count, phantom_seed, phantom_out);
            std::printf("manifest: %s\n", manifest.c_str());
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
