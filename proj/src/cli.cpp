#include "invpt/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "invpt/blend.hpp"
#include "invpt/functional.hpp"
#include "invpt/haar.hpp"
#include "invpt/io.hpp"
#include "invpt/suspension.hpp"

namespace invpt {

namespace {

using nlohmann::json;

json to_array(const Point& p) { return std::vector<double>(p.data(), p.data() + p.size()); }

void require_flag(const std::string& value, const std::string& flag, const std::string& command) {
    if (value.empty()) throw InvalidSpec(command + " needs " + flag);
}

// Output sink: the --out file when given, otherwise the stream.
void emit(const RunConfig& config, std::ostream& out, const std::string& text) {
    if (config.out.empty()) {
        out << text;
        return;
    }
    std::ofstream file(config.out, std::ios::binary);
    if (!file) throw ParseError(config.out + ": cannot write file");
    file << text;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw ParseError(path + ": cannot write file");
    file << text;
}

BlendSpec load_spec(const RunConfig& config) {
    require_flag(config.spec, "--spec", config.command);
    BlendSpec spec = blend_spec_from_json(read_json_file(config.spec), config.spec);
    if (config.mode) spec.mode = blend_mode_from_string(*config.mode);
    return spec;
}

InvariantFunctional functional_named(const std::string& name, const RunConfig& config) {
    if (name == "centroid") return centroid_functional();
    if (name == "mvee") return mvee_center();
    if (name == "blend") return blend_functional(load_spec(config));
    throw InvalidSpec("unknown functional '" + name + "' (expected centroid, mvee, or blend)");
}

std::vector<std::string> split_names(const std::string& list) {
    std::vector<std::string> names;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) names.push_back(item);
    return names;
}

std::vector<ConvexBody> load_bodies(const RunConfig& config) {
    std::vector<ConvexBody> bodies;
    if (!config.body.empty()) bodies.push_back(load_body(config.body));
    if (!config.bodies.empty()) {
        namespace fs = std::filesystem;
        if (!fs::is_directory(config.bodies)) throw ParseError(config.bodies + ": not a directory");
        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(config.bodies))
            if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
        std::sort(files.begin(), files.end());
        for (const fs::path& f : files) bodies.push_back(load_body(f.string()));
        if (files.empty()) throw ParseError(config.bodies + ": no .json body files");
    }
    return bodies;
}

ConvexBody suspension_base(const RunConfig& config) {
    if (!config.base.empty()) return load_body(config.base);
    if (config.profile > 0) return asymmetric_profile(config.profile, derive_seed(config.seed, "profile"));
    throw InvalidSpec(config.command + " needs --base or --profile");
}

void write_slice_plot(const RunConfig& config, const SuspensionBody& s) {
    if (config.plot.empty()) return;
    if (s.base.dim() != 2) throw DimensionMismatch("--plot needs a 2D base");
    std::vector<ConvexBody> loops{s.base};
    for (double h : {0.25, 0.5, 0.75}) loops.push_back(slice(s.body, h));
    std::ostringstream os;
    write_polyline_csv(os, loops);
    write_file(config.plot, os.str());
}

int compute(const RunConfig& config, std::ostream& out) {
    require_flag(config.body, "--body", config.command);
    const std::string name = config.functional.empty() ? "centroid" : config.functional;
    const ConvexBody body = load_body(config.body);
    const InvariantFunctional p = functional_named(name, config);
    const json result{{"functional", p.name}, {"point", to_array(p(body))}};
    emit(config, out, result.dump() + "\n");
    return kPass;
}

int test_equivariance(const RunConfig& config, std::ostream& out) {
    const std::string name = config.functional.empty() ? "centroid" : config.functional;
    const InvariantFunctional p = functional_named(name, config);
    std::vector<ConvexBody> bodies = load_bodies(config);
    if (bodies.empty() && name == "blend") bodies.push_back(load_spec(config).anchor);
    if (bodies.empty()) throw InvalidSpec("test-equivariance needs --body or --bodies");
    if (config.maps < 1) throw InvalidSpec("--maps must be positive");

    const int n = bodies.front().dim();
    for (const ConvexBody& k : bodies)
        if (k.dim() != n) throw DimensionMismatch("all bodies must share one dimension");
    HaarSampler sampler(n, derive_seed(config.seed, "test-equivariance/maps"));
    std::vector<AffineMap> maps;
    for (int j = 0; j < config.maps; ++j)
        maps.push_back(p.equivariance_class == EquivarianceClass::affine ? random_affine_map(sampler)
                                                                           : random_similarity(sampler).to_affine());
    const double tol = config.tol.value_or(name == "centroid" ? 1e-9 : 1e-5);
    const EquivarianceReport report = equivariance_report(p, bodies, maps, tol);

    std::ostringstream csv;
    write_report_csv(csv, report);
    const std::string summary = report_summary_json(report).dump() + "\n";
    if (config.out.empty()) {
        out << csv.str();
    } else {
        write_file(config.out, csv.str());
        out << summary;
    }
    return report.passed ? kPass : kVerificationFailure;
}

int suspend_command(const RunConfig& config, std::ostream& out) {
    const SuspensionBody s = suspend(suspension_base(config));
    write_slice_plot(config, s);
    emit(config, out, body_to_json(s.body).dump(2) + "\n");
    return kPass;
}

int blend_command(const RunConfig& config, std::ostream& out) {
    require_flag(config.body, "--body", config.command);
    const BlendFunctional blend(load_spec(config));
    const BlendEvaluation e = blend.evaluate(load_body(config.body));
    const json result{{"point", to_array(e.point)}, {"distance", e.distance}, {"phi1", e.phi1},
                      {"tie", e.tie},             {"mode", to_string(blend.spec().mode)}};
    emit(config, out, result.dump() + "\n");
    return kPass;
}

int verify_suspension(const RunConfig& config, std::ostream& out) {
    const SuspensionBody s = suspend(suspension_base(config));
    write_slice_plot(config, s);
    std::vector<InvariantFunctional> functionals;
    for (const std::string& name : split_names(config.functional.empty() ? "centroid,mvee" : config.functional)) {
        if (name == "blend") throw InvalidSpec("verify-suspension anchors its own blends; use centroid or mvee");
        functionals.push_back(functional_named(name, config));
    }
    if (config.grid < 1) throw InvalidSpec("--grid must be positive");
    SliceOptions options;
    options.seed = derive_seed(config.seed, "verify-suspension/blend");
    if (config.tol) options.achievability_tol = *config.tol;
    try {
        const SliceReport report = verify_fixed_slice(s, functionals, interior_grid(s.base, config.grid), options);
        emit(config, out, to_json(report).dump(2) + "\n");
        return kPass;
    } catch (const VerificationFailure& e) {
        emit(config, out, to_json(e.report()).dump(2) + "\n");
        return kVerificationFailure;
    }
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        if (config.tol && !(*config.tol > 0)) throw InvalidSpec("--tol must be positive");
        if (config.command == "compute") return compute(config, out);
        if (config.command == "test-equivariance") return test_equivariance(config, out);
        if (config.command == "suspend") return suspend_command(config, out);
        if (config.command == "blend") return blend_command(config, out);
        if (config.command == "verify-suspension") return verify_suspension(config, out);
        throw InvalidSpec("unknown command '" + config.command + "'");
    } catch (const Error& e) {
        err << json{{"error", {{"code", e.code()}, {"message", e.what()}}}}.dump() << '\n';
        return kInputError;
    } catch (const std::exception& e) {
        err << json{{"error", {{"code", "InternalError"}, {"message", e.what()}}}}.dump() << '\n';
        return kInputError;
    }
}

}  // namespace invpt
