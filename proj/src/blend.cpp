#include "invpt/blend.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "invpt/haar.hpp"
#include "invpt/orbit.hpp"
#include "invpt/symmetry.hpp"

namespace invpt {

namespace {

// Alignment residuals this close to the optimum count as optimal.
constexpr double kOptimalSlack = 1e-7;

std::vector<Matrix> stabilizer_of(const TranslationClass& unit) {
    std::vector<Matrix> out;
    for (const Similarity& s : symmetry_group(unit.representative()).elements) out.push_back(s.rotation());
    return out;
}

double max_entry_distance(const Matrix& a, const Matrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace

std::string to_string(BlendMode mode) { return mode == BlendMode::hard ? "hard" : "soft"; }

BlendMode blend_mode_from_string(const std::string& s) {
    if (s == "hard") return BlendMode::hard;
    if (s == "soft") return BlendMode::soft;
    throw InvalidSpec("unknown blend mode '" + s + "' (expected soft or hard)");
}

void validate(const BlendSpec& spec) {
    const ConvexBody& k0 = spec.anchor;
    if (spec.target.size() != k0.dim()) throw InvalidSpec("target dimension differs from the anchor");
    if (!(spec.eps_in > 0.0 && spec.eps_in < spec.eps_out)) throw InvalidSpec("radii must satisfy 0 < eps_in < eps_out");
    if (!(spec.kernel_width > 0.0)) throw InvalidSpec("kernel width must be positive");
    if (spec.haar_budget < 0) throw InvalidSpec("haar budget must be non-negative");
    if (spec.mode == BlendMode::soft && spec.haar_budget < 1) throw InvalidSpec("soft mode needs at least one Haar sample");
    const double diam = k0.diameter();
    if (interior_margin(k0, spec.target) < 1e-6 * diam)
        throw InvalidSpec("target is not in the interior of the anchor with margin 1e-6 * diameter");
    for (const Similarity& s : symmetry_group(k0).elements)
        if ((s.apply(spec.target) - spec.target).norm() > 1e-8 * diam)
            throw InvalidSpec("target is moved by a symmetry of the anchor");
}

double bump(double d, double eps_in, double eps_out) {
    if (d <= eps_in) return 1.0;
    if (d >= eps_out) return 0.0;
    const double t = (d - eps_in) / (eps_out - eps_in);
    return 1.0 - t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
}

BlendFunctional::BlendFunctional(BlendSpec spec)
    : spec_((validate(spec), std::move(spec))),
      anchor_unit_(spec_.anchor),
      anchor_to_original_(Similarity::identity(spec_.anchor.dim())) {
    Normalized unit = normalize(spec_.anchor);
    anchor_unit_ = unit.body;
    anchor_to_original_ = unit.to_original;
    target_unit_ = anchor_to_original_.inverse().apply(spec_.target);
    stabilizer_ = stabilizer_of(anchor_unit_);
}

BlendEvaluation BlendFunctional::evaluate_unit(const TranslationClass& unit) const {
    const int n = unit.dim();
    if (n != anchor_unit_.dim()) throw DimensionMismatch("body and blend anchor have different dimensions");

    HaarSampler starts(n, derive_seed(spec_.seed, "blend/align"));
    const OrbitAlignment alignment = orbit_align(unit, anchor_unit_, starts, spec_.haar_budget);

    BlendEvaluation e;
    e.distance = alignment.residual;
    e.phi1 = bump(e.distance, spec_.eps_in, spec_.eps_out);
    e.unit_point = Point::Zero(n);
    if (e.phi1 == 0.0) return e;

    const AlignmentObjective objective(unit, anchor_unit_, DirectionSet::standard(n));
    const double cutoff = e.distance + kOptimalSlack;
    Point delta = Point::Zero(n);
    if (spec_.mode == BlendMode::hard) {
        int used = 0;
        for (const Matrix& s : stabilizer_) {
            const Matrix q = alignment.rotation * s;
            if (objective(q) > cutoff) continue;
            delta += q * target_unit_;
            ++used;
        }
        if (used == 0) delta = alignment.rotation * target_unit_;
        else delta /= used;
    } else {
        HaarSampler draws(n, derive_seed(spec_.seed, "blend/soft"));
        std::vector<Matrix> qs;
        std::vector<double> logw;
        for (int j = 0; j < spec_.haar_budget; ++j) {
            qs.push_back(draws.next());
            const double r = objective(qs.back()) / spec_.kernel_width;
            logw.push_back(-r * r);
        }
        const double top = *std::max_element(logw.begin(), logw.end());
        double total = 0.0;
        for (std::size_t j = 0; j < qs.size(); ++j) {
            const double w = std::exp(logw[j] - top);
            delta += w * (qs[j] * target_unit_);
            total += w;
        }
        delta /= total;
    }

    const double unit_diam = anchor_unit_.representative().diameter();
    for (const LocalAlignment& local : alignment.local_optima) {
        if (local.residual > cutoff) continue;
        bool related = false;
        for (const Matrix& s : stabilizer_)
            related = related || max_entry_distance(local.rotation, alignment.rotation * s) <= 1e-4;
        if (!related && ((local.rotation - alignment.rotation) * target_unit_).norm() > 1e-6 * unit_diam) e.tie = true;
    }

    e.unit_point = e.phi1 * delta;
    return e;
}

BlendEvaluation BlendFunctional::evaluate(const ConvexBody& body) const {
    const Normalized unit = normalize(body);
    BlendEvaluation e = evaluate_unit(unit.body);
    if (e.phi1 == 0.0) {
        e.point = body.centroid();
        return e;
    }
    e.point = unit.to_original.apply(e.unit_point);
    if (!contains(body, e.point, 1e-8 * body.diameter()))
        throw InteriorViolation("blended point leaves the body (orbit distance " + std::to_string(e.distance) +
                                "); choose a smaller eps_out");
    return e;
}

InvariantFunctional blend_functional(const BlendSpec& spec) {
    auto blend = std::make_shared<const BlendFunctional>(spec);
    InvariantFunctional f;
    f.name = "blend";
    f.equivariance_class = EquivarianceClass::similarity;
    f.of_body = true;
    f.evaluator = [blend](const ConvexBody& k) { return blend->evaluate(k).point; };
    std::vector<double> target(spec.target.data(), spec.target.data() + spec.target.size());
    f.metadata = {{"mode", to_string(spec.mode)},     {"eps_in", spec.eps_in},
                  {"eps_out", spec.eps_out},          {"kernel_width", spec.kernel_width},
                  {"haar_budget", spec.haar_budget},  {"seed", spec.seed},
                  {"target", target}};
    return f;
}

InvariantFunctional blend_unit_functional(const BlendSpec& spec) {
    auto blend = std::make_shared<const BlendFunctional>(spec);
    InvariantFunctional f;
    f.name = "blend-unit";
    f.equivariance_class = EquivarianceClass::similarity;
    f.of_body = true;
    f.evaluator = [blend](const ConvexBody& k) { return blend->evaluate_unit(TranslationClass(k)).unit_point; };
    return f;
}

SuggestedRadii suggest_radii(const ConvexBody& anchor, std::uint64_t seed, int budget) {
    const TranslationClass unit = normalize(anchor).body;
    const std::vector<Matrix> stabilizer = stabilizer_of(unit);
    HaarSampler sampler(unit.dim(), derive_seed(seed, "blend/radii"));
    OrbitAlignOptions options;
    options.identity_start = false;
    options.vertex_seeds = false;
    options.exact_hit = -1.0;
    const OrbitAlignment self = orbit_align(unit, unit, sampler, budget, options);

    SuggestedRadii out;
    out.gap = std::numeric_limits<double>::infinity();
    for (const LocalAlignment& local : self.local_optima) {
        double nearest = std::numeric_limits<double>::infinity();
        for (const Matrix& s : stabilizer) nearest = std::min(nearest, max_entry_distance(local.rotation, s));
        if (nearest > 1e-3) out.gap = std::min(out.gap, local.residual);
    }
    if (!std::isfinite(out.gap))
        throw NoConvergence("no self-alignment away from the symmetries was found; raise the budget");
    out.eps_out = 0.1 * out.gap;
    out.eps_in = 0.25 * out.eps_out;
    return out;
}

}  // namespace invpt
