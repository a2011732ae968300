// Every tunable of the pipeline in one place.

#pragma once

#include <cstdint>
#include <stdexcept>

namespace scs {

enum class CqMethod {
    SelfOrganizing, // 1-D Kohonen color map trained on sampled pixels
    MedianCut,      // classic recursive box split fallback
};

// Which pixels are candidates for the color-transition expansion stage.
enum class TransitionBand {
    BelowThreshold, // saliency < transition_saliency (default)
    Banded,         // transition_saliency <= saliency < final binarization mean
};

struct ScsParams {
    // Size / color reduction.
    int max_dim = 500;      // larger image dimension after downscaling
    int palette_size = 64;  // color budget for quantization
    CqMethod cq_method = CqMethod::SelfOrganizing;
    std::uint32_t seed = 0; // drives quantizer sampling; keeps runs reproducible

    // Hair removal. Structuring-element length is a fraction of min(rows, cols).
    double hair_length_frac = 0.05;
    double hair_response_threshold = 25.0; // gray levels the closing must exceed
    int hair_min_area = 30;                // components smaller than this are noise
    bool dehair_before_quantize = false;   // default order: quantize, then de-hair

    // Segmentation criteria.
    double color_threshold = 60.0;       // spread of region color distances that triggers criterion (1)
    int kernel_min_salient = 50;         // pixels above twice the mean saliency that make a region kernel
    double min_area_frac = 0.2;          // fraction of min(rows, cols) below which a peripheral is dropped
    double transition_saliency = 10.0;   // saliency below which a pixel may join the transition region
    double transition_color_frac = 0.8;  // fraction of the background-to-band color distance kept
    TransitionBand transition_band = TransitionBand::BelowThreshold;
    bool peripheral_remove_below_bridge = true; // drop peripheral when its area < hull-bridging area

    // Binarization / geometry.
    int connectivity = 8;        // foreground connectivity (background uses the dual)
    int max_binarize_iters = 10;
    double smooth_radius_frac = 0.01; // disk radius as a fraction of min(rows, cols)
    bool single_lesion = true;
    bool compute_hull = true;

    void validate() const {
        if (max_dim < 16) throw std::invalid_argument("max_dim must be >= 16");
        if (palette_size < 2) throw std::invalid_argument("palette_size must be >= 2");
        if (color_threshold <= 0) throw std::invalid_argument("color_threshold must be > 0");
        if (kernel_min_salient < 0) throw std::invalid_argument("kernel_min_salient must be >= 0");
        if (min_area_frac <= 0 || min_area_frac >= 1)
            throw std::invalid_argument("min_area_frac must be in (0, 1)");
        if (transition_saliency < 0 || transition_saliency > 255)
            throw std::invalid_argument("transition_saliency must be in [0, 255]");
        if (transition_color_frac <= 0 || transition_color_frac >= 1)
            throw std::invalid_argument("transition_color_frac must be in (0, 1)");
        if (connectivity != 4 && connectivity != 8)
            throw std::invalid_argument("connectivity must be 4 or 8");
        if (max_binarize_iters < 1)
            throw std::invalid_argument("max_binarize_iters must be >= 1");
    }
};

} // namespace scs
