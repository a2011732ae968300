// Pixel-level evaluation: confusion counts, the nine segmentation metrics,
// and per-dataset aggregation. A zero denominator leaves the metric
// undefined rather than substituting a conventional value.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "scs/image.hpp"

namespace scs {

struct ConfusionCounts {
    std::uint64_t tp = 0;
    std::uint64_t fp = 0;
    std::uint64_t tn = 0;
    std::uint64_t fn = 0;

    std::uint64_t total() const { return tp + fp + tn + fn; }
};

inline ConfusionCounts confusion(const BinaryMask& pred, const BinaryMask& gt) {
    require_same_grid(pred.width(), pred.height(), gt.width(), gt.height(), "confusion");
    ConfusionCounts c;
    for (std::size_t i = 0; i < pred.bits().size(); ++i) {
        const bool p = pred.bits()[i] != 0;
        const bool g = gt.bits()[i] != 0;
        if (p && g) ++c.tp;
        else if (p && !g) ++c.fp;
        else if (!p && g) ++c.fn;
        else ++c.tn;
    }
    return c;
}

struct MetricsReport {
    std::optional<double> ac;   // accuracy        (TP+TN) / total
    std::optional<double> se;   // sensitivity      TP / (TP+FN)
    std::optional<double> sp;   // specificity      TN / (TN+FP)
    std::optional<double> di;   // Dice             2TP / (2TP+FN+FP)
    std::optional<double> ja;   // Jaccard          TP / (TP+FN+FP)
    std::optional<double> p;    // precision        TP / (TP+FP)
    std::optional<double> e;    // error            (FP+FN) / total
    std::optional<double> hd;   // Hammoude         (FP+FN) / (TP+FN+FP)
    std::optional<double> xor_; // xor measure      (FP+FN) / (TP+FN)

    static constexpr int kCount = 9;
    std::optional<double>& field(int i) {
        std::optional<double>* fields[kCount] = {&ac, &se, &sp, &di, &ja, &p, &e, &hd, &xor_};
        return *fields[i];
    }
    const std::optional<double>& field(int i) const {
        return const_cast<MetricsReport*>(this)->field(i);
    }
    static const char* name(int i) {
        static constexpr const char* names[kCount] = {"ac", "se", "sp", "di", "ja",
                                                      "p", "e", "hd", "xor"};
        return names[i];
    }
};

inline MetricsReport compute_metrics(const ConfusionCounts& c) {
    if (c.total() == 0) throw std::invalid_argument("compute_metrics: empty confusion counts");
    const auto ratio = [](std::uint64_t num, std::uint64_t den) -> std::optional<double> {
        if (den == 0) return std::nullopt;
        return static_cast<double>(num) / static_cast<double>(den);
    };
    MetricsReport m;
    m.ac = ratio(c.tp + c.tn, c.total());
    m.se = ratio(c.tp, c.tp + c.fn);
    m.sp = ratio(c.tn, c.tn + c.fp);
    m.di = ratio(2 * c.tp, 2 * c.tp + c.fn + c.fp);
    m.ja = ratio(c.tp, c.tp + c.fn + c.fp);
    m.p = ratio(c.tp, c.tp + c.fp);
    m.e = ratio(c.fp + c.fn, c.total());
    m.hd = ratio(c.fp + c.fn, c.tp + c.fn + c.fp);
    m.xor_ = ratio(c.fp + c.fn, c.tp + c.fn);
    return m;
}

struct AggregateReport {
    MetricsReport mean;
    std::array<int, MetricsReport::kCount> skipped{}; // undefined entries per metric
};

// Per-metric arithmetic mean over the reports where that metric is defined.
inline AggregateReport aggregate(const std::vector<MetricsReport>& reports) {
    if (reports.empty()) throw std::invalid_argument("aggregate: empty report list");
    AggregateReport agg;
    for (int i = 0; i < MetricsReport::kCount; ++i) {
        double sum = 0;
        int n = 0;
        for (const MetricsReport& r : reports) {
            if (r.field(i).has_value()) {
                sum += *r.field(i);
                ++n;
            } else {
                ++agg.skipped[i];
            }
        }
        if (n > 0) agg.mean.field(i) = sum / n;
    }
    return agg;
}

} // namespace scs
