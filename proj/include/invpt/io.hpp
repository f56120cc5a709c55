#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "invpt/blend.hpp"
#include "invpt/functional.hpp"
#include "invpt/similarity.hpp"

namespace invpt {

/// Body files: { "dim": n, "vertices": [[x1, ..., xn], ...] }. Bodies are
/// built with convex_hull, so redundant points are allowed.
ConvexBody body_from_json(const nlohmann::json& j, const std::string& source = "body");
/// Vertices sorted lexicographically.
nlohmann::json body_to_json(const ConvexBody& body);

/// { "scale": s, "rotation": [[...], ...], "translation": [...] }
Similarity similarity_from_json(const nlohmann::json& j, const std::string& source = "similarity");
nlohmann::json similarity_to_json(const Similarity& s);

/// { "anchor": body, "target": [...], "eps_in", "eps_out", "kernel_width",
///   "haar_budget", "seed", "mode": "soft" | "hard" }. When both radii are
/// absent they are filled in by suggest_radii.
BlendSpec blend_spec_from_json(const nlohmann::json& j, const std::string& source = "blend spec");
nlohmann::json blend_spec_to_json(const BlendSpec& spec);

/// Parses a JSON file; ParseError messages carry the path and line.
nlohmann::json read_json_file(const std::string& path);
ConvexBody load_body(const std::string& path);
void save_json(const std::string& path, const nlohmann::json& j);

/// CSV with header body_id,map_id,residual,membership.
void write_report_csv(std::ostream& os, const EquivarianceReport& report);
nlohmann::json report_summary_json(const EquivarianceReport& report);

/// One closed loop (x,y rows, first vertex repeated) per 2D body, loops
/// separated by a blank line.
void write_polyline_csv(std::ostream& os, const std::vector<ConvexBody>& loops);

/// Shortest round-trip decimal form used in every text output.
std::string format_number(double x);

}  // namespace invpt
