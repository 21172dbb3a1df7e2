/**
 * @file serialize.hpp
 * @brief JSON and CSV forms of arcs, scenes, ground truth and metrics.
 */
#pragma once

#include "arcscan/csa.hpp"
#include "arcscan/eval.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace arcscan {

using nlohmann::json;

/// Throws IoError naming the path when it cannot be read or parsed.
json read_json(const std::filesystem::path& path);

/// Two-space indented, trailing newline.
void write_json(const json& doc, const std::filesystem::path& path);

const char* to_string(ArcSource source);

/// {"center", "radius", "endpoints", "closed", "n_pixels", "source"}.
json arc_to_json(const ArcRecord& arc);

/// Inverse of arc_to_json as far as the schema allows: the segment holds
/// only the two endpoints (one pixel for a closed curve).
ArcRecord arc_from_json(const json& j);

/// {"width", "height", "algorithm", "arcs": [...]}.
json arcs_document(std::span<const ArcRecord> arcs, int width, int height,
                   const std::string& algorithm);

std::vector<ArcRecord> arcs_from_document(const json& doc);

json scene_to_json(const SceneSpec& scene);

/// Throws std::invalid_argument on a malformed document.
SceneSpec scene_from_json(const json& j);

/// Writes `path` plus the two masks as `<stem>.arc.pbm` and
/// `<stem>.all.pbm` next to it; the JSON refers to them by file name.
void save_truth(const GroundTruth& truth, const std::filesystem::path& path);

/// Mask references are resolved relative to the JSON file.
GroundTruth load_truth(const std::filesystem::path& path);

/// Elapsed time is left out so the output is reproducible.
json metrics_to_json(const MetricsReport& m);

std::string metrics_csv_header();
std::string metrics_csv_row(const MetricsReport& m);

/// Fixed six-decimal formatting; "inf" for infinity.
std::string format_number(double v);

}  // namespace arcscan
