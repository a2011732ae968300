// Discovery of image/ground-truth pairs for PH2- and ISIC-style directory
// trees plus an explicit CSV manifest escape hatch.

#pragma once

#include <algorithm>
#include <cctype>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "scs/image_io.hpp"

namespace scs {

namespace fs = std::filesystem;

struct DiscoveryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SamplePair {
    std::string id;
    fs::path image_path;
    std::optional<fs::path> gt_path;
};

enum class DatasetLayout { Ph2, Isic, Csv };

struct Manifest {
    std::vector<SamplePair> samples;
    DatasetLayout layout = DatasetLayout::Csv;
};

inline const char* layout_name(DatasetLayout layout) {
    switch (layout) {
        case DatasetLayout::Ph2: return "ph2";
        case DatasetLayout::Isic: return "isic";
        default: return "csv";
    }
}

inline DatasetLayout layout_from_name(const std::string& name) {
    if (name == "ph2") return DatasetLayout::Ph2;
    if (name == "isic") return DatasetLayout::Isic;
    if (name == "csv") return DatasetLayout::Csv;
    throw DiscoveryError("unknown layout '" + name + "' (expected ph2, isic, or csv)");
}

namespace detail {

inline bool has_image_extension(const fs::path& p) {
    std::string ext = p.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) {
        return static_cast<char>(std::tolower(c));
    });
    return ext == ".png" || ext == ".jpg" || ext == ".jpeg" || ext == ".bmp";
}

// PH2 ships one folder per case: <id>/<id>_Dermoscopic_Image/<id>.bmp and
// <id>/<id>_lesion/<id>_lesion.bmp. Distributions vary, so any file named
// <id>.* / <id>_lesion.* anywhere under the case folder is accepted.
inline std::vector<SamplePair> discover_ph2(const fs::path& root) {
    std::vector<SamplePair> samples;
    for (const auto& entry : fs::directory_iterator(root)) {
        if (!entry.is_directory()) continue;
        const std::string id = entry.path().filename().string();
        std::optional<fs::path> image, gt;
        for (const auto& file : fs::recursive_directory_iterator(entry.path())) {
            if (!file.is_regular_file() || !has_image_extension(file.path())) continue;
            const std::string stem = file.path().stem().string();
            if (stem == id && !image) image = file.path();
            if (stem == id + "_lesion" && !gt) gt = file.path();
        }
        if (image) samples.push_back({id, *image, gt});
    }
    return samples;
}

// ISIC-style: ISIC_<id>.<ext> images with ISIC_<id>_Segmentation.<ext> masks
// anywhere under the root.
inline std::vector<SamplePair> discover_isic(const fs::path& root) {
    std::map<std::string, fs::path> images;
    std::map<std::string, fs::path> masks;
    constexpr const char* kSuffix = "_Segmentation";
    for (const auto& file : fs::recursive_directory_iterator(root)) {
        if (!file.is_regular_file() || !has_image_extension(file.path())) continue;
        const std::string stem = file.path().stem().string();
        if (stem.size() > std::strlen(kSuffix) &&
            stem.ends_with(kSuffix)) {
            masks.emplace(stem.substr(0, stem.size() - std::strlen(kSuffix)), file.path());
        } else {
            images.emplace(stem, file.path());
        }
    }
    std::vector<SamplePair> samples;
    for (const auto& [id, path] : images) {
        const auto it = masks.find(id);
        samples.push_back({id, path,
                           it != masks.end() ? std::optional<fs::path>(it->second) : std::nullopt});
    }
    return samples;
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.push_back("");
    return fields;
}

// Header `id,image,gt`; the gt field may be empty. Relative paths resolve
// against the CSV's directory.
inline std::vector<SamplePair> discover_csv(const fs::path& csv_path) {
    std::ifstream in(csv_path);
    if (!in) throw DiscoveryError("cannot read manifest " + csv_path.string());
    const fs::path base = csv_path.parent_path();

    std::string line;
    if (!std::getline(in, line)) throw DiscoveryError("empty manifest " + csv_path.string());
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "id,image,gt")
        throw DiscoveryError("manifest " + csv_path.string() + ": header must be 'id,image,gt'");

    std::vector<SamplePair> samples;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() < 2)
            throw DiscoveryError("manifest " + csv_path.string() + ": malformed row '" + line + "'");
        auto resolve = [&](const std::string& p) {
            const fs::path path(p);
            return path.is_absolute() ? path : base / path;
        };
        SamplePair pair;
        pair.id = fields[0];
        pair.image_path = resolve(fields[1]);
        if (fields.size() >= 3 && !fields[2].empty()) pair.gt_path = resolve(fields[2]);
        samples.push_back(std::move(pair));
    }
    return samples;
}

} // namespace detail

// Enumerates image/ground-truth pairs under the root. For the csv layout the
// root may be the manifest file itself or a directory holding manifest.csv.
inline Manifest discover(const fs::path& root, DatasetLayout layout) {
    std::error_code ec;
    if (!fs::exists(root, ec))
        throw DiscoveryError("dataset root does not exist: " + root.string());

    Manifest manifest;
    manifest.layout = layout;
    switch (layout) {
        case DatasetLayout::Ph2:
            manifest.samples = detail::discover_ph2(root);
            break;
        case DatasetLayout::Isic:
            manifest.samples = detail::discover_isic(root);
            break;
        case DatasetLayout::Csv: {
            const fs::path csv = fs::is_directory(root) ? root / "manifest.csv" : root;
            manifest.samples = detail::discover_csv(csv);
            break;
        }
    }

    std::sort(manifest.samples.begin(), manifest.samples.end(),
              [](const SamplePair& a, const SamplePair& b) { return a.id < b.id; });
    std::set<std::string> ids;
    for (const SamplePair& s : manifest.samples)
        if (!ids.insert(s.id).second)
            throw DiscoveryError("duplicate sample id '" + s.id + "' in " + root.string());

    if (manifest.samples.empty())
        throw DiscoveryError("no images found under " + root.string() + " with layout '" +
                             layout_name(layout) + "'");
    return manifest;
}

} // namespace scs
