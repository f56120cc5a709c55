#include "invpt/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <ostream>
#include <sstream>

namespace invpt {

namespace {

using nlohmann::json;

[[noreturn]] void field_error(const std::string& source, const std::string& field, const std::string& what) {
    throw ParseError(source + ": field '" + field + "': " + what);
}

const json& require(const json& j, const std::string& key, const std::string& source) {
    if (!j.is_object()) field_error(source, "<root>", "expected an object");
    auto it = j.find(key);
    if (it == j.end()) field_error(source, key, "missing");
    return *it;
}

double number(const json& j, const std::string& field, const std::string& source) {
    if (!j.is_number()) field_error(source, field, "expected a number");
    const double x = j.get<double>();
    if (!std::isfinite(x)) field_error(source, field, "not finite");
    return x;
}

Point vector_of(const json& j, const std::string& field, const std::string& source, Eigen::Index dim = -1) {
    if (!j.is_array()) field_error(source, field, "expected an array");
    if (dim >= 0 && static_cast<Eigen::Index>(j.size()) != dim)
        field_error(source, field, "expected " + std::to_string(dim) + " entries, got " + std::to_string(j.size()));
    Point p(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i)
        p(static_cast<Eigen::Index>(i)) = number(j[i], field + "[" + std::to_string(i) + "]", source);
    return p;
}

json to_array(const Point& p) { return std::vector<double>(p.data(), p.data() + p.size()); }

std::size_t line_of(const std::string& text, std::size_t byte) {
    byte = std::min(byte, text.size());
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

}  // namespace

std::string format_number(double x) { return json(x).dump(); }

ConvexBody body_from_json(const json& j, const std::string& source) {
    const json& dim_field = require(j, "dim", source);
    if (!dim_field.is_number_integer() || dim_field.get<long>() < 1) field_error(source, "dim", "expected a positive integer");
    const auto dim = static_cast<Eigen::Index>(dim_field.get<long>());
    const json& verts = require(j, "vertices", source);
    if (!verts.is_array() || verts.empty()) field_error(source, "vertices", "expected a non-empty array");
    Matrix pts(dim, static_cast<Eigen::Index>(verts.size()));
    for (std::size_t i = 0; i < verts.size(); ++i)
        pts.col(static_cast<Eigen::Index>(i)) = vector_of(verts[i], "vertices[" + std::to_string(i) + "]", source, dim);
    return convex_hull(pts);
}

json body_to_json(const ConvexBody& body) {
    std::vector<std::vector<double>> rows;
    for (const Point& v : body.vertices()) rows.emplace_back(v.data(), v.data() + v.size());
    std::sort(rows.begin(), rows.end());
    return {{"dim", body.dim()}, {"vertices", rows}};
}

Similarity similarity_from_json(const json& j, const std::string& source) {
    const double scale = number(require(j, "scale", source), "scale", source);
    const Point t = vector_of(require(j, "translation", source), "translation", source);
    const json& rot = require(j, "rotation", source);
    const auto n = t.size();
    if (!rot.is_array() || static_cast<Eigen::Index>(rot.size()) != n) field_error(source, "rotation", "expected an n x n array");
    Matrix r(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        r.row(i) = vector_of(rot[static_cast<std::size_t>(i)], "rotation[" + std::to_string(i) + "]", source, n).transpose();
    if (!(scale > 0)) field_error(source, "scale", "must be positive");
    if (orthogonality_residual(r) > 1e-6) field_error(source, "rotation", "not orthogonal");
    return Similarity(scale, r, t);
}

json similarity_to_json(const Similarity& s) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < s.rotation().rows(); ++i) rows.push_back(to_array(s.rotation().row(i).transpose()));
    return {{"scale", s.scale()}, {"rotation", rows}, {"translation", to_array(s.translation())}};
}

BlendSpec blend_spec_from_json(const json& j, const std::string& source) {
    BlendSpec spec{body_from_json(require(j, "anchor", source), source + ": anchor"), Point()};
    spec.target = vector_of(require(j, "target", source), "target", source, spec.anchor.dim());
    if (j.contains("kernel_width")) spec.kernel_width = number(j["kernel_width"], "kernel_width", source);
    if (j.contains("haar_budget")) {
        if (!j["haar_budget"].is_number_integer()) field_error(source, "haar_budget", "expected an integer");
        spec.haar_budget = j["haar_budget"].get<int>();
    }
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned()) field_error(source, "seed", "expected a non-negative integer");
        spec.seed = j["seed"].get<std::uint64_t>();
    }
    if (j.contains("mode")) {
        if (!j["mode"].is_string()) field_error(source, "mode", "expected \"soft\" or \"hard\"");
        try {
            spec.mode = blend_mode_from_string(j["mode"].get<std::string>());
        } catch (const InvalidSpec& e) {
            field_error(source, "mode", e.what());
        }
    }
    const bool has_in = j.contains("eps_in"), has_out = j.contains("eps_out");
    if (has_in != has_out) field_error(source, has_in ? "eps_out" : "eps_in", "radii must be given together");
    if (has_in) {
        spec.eps_in = number(j["eps_in"], "eps_in", source);
        spec.eps_out = number(j["eps_out"], "eps_out", source);
    } else {
        const SuggestedRadii radii = suggest_radii(spec.anchor, spec.seed);
        spec.eps_in = radii.eps_in;
        spec.eps_out = radii.eps_out;
    }
    return spec;
}

json blend_spec_to_json(const BlendSpec& spec) {
    return {{"anchor", body_to_json(spec.anchor)},   {"target", to_array(spec.target)},
            {"eps_in", spec.eps_in},                 {"eps_out", spec.eps_out},
            {"kernel_width", spec.kernel_width},     {"haar_budget", spec.haar_budget},
            {"seed", spec.seed},                     {"mode", to_string(spec.mode)}};
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open file");
    const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(path + ":" + std::to_string(line_of(text, e.byte)) + ": malformed JSON (" + e.what() + ")");
    }
}

ConvexBody load_body(const std::string& path) { return body_from_json(read_json_file(path), path); }

void save_json(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw ParseError(path + ": cannot write file");
    out << j.dump(2) << '\n';
}

void write_report_csv(std::ostream& os, const EquivarianceReport& report) {
    os << "body_id,map_id,residual,membership\n";
    for (const EquivarianceRow& r : report.rows)
        os << r.body_id << ',' << r.map_id << ',' << format_number(r.residual) << ',' << (r.membership ? "true" : "false")
           << '\n';
}

json report_summary_json(const EquivarianceReport& report) {
    return {{"functional", report.functional}, {"tol", report.tol},
            {"rows", report.rows.size()},      {"max_residual", report.max_residual},
            {"membership_ok", report.membership_ok}, {"passed", report.passed},
            {"warnings", report.warnings}};
}

void write_polyline_csv(std::ostream& os, const std::vector<ConvexBody>& loops) {
    bool first = true;
    for (const ConvexBody& k : loops) {
        if (k.dim() != 2) throw DimensionMismatch("polyline output needs 2D bodies");
        if (!first) os << '\n';
        first = false;
        std::vector<Point> v = k.vertices();
        const Point c = k.vertex_barycenter();
        std::sort(v.begin(), v.end(), [&](const Point& p, const Point& q) {
            return std::atan2(p(1) - c(1), p(0) - c(0)) < std::atan2(q(1) - c(1), q(0) - c(0));
        });
        v.push_back(v.front());
        for (const Point& p : v) os << format_number(p(0)) << ',' << format_number(p(1)) << '\n';
    }
}

}  // namespace invpt
