#include "invpt/functional.hpp"

#include <cmath>

#include "invpt/metric.hpp"
#include "invpt/mvee.hpp"

namespace invpt {

std::string to_string(EquivarianceClass c) { return c == EquivarianceClass::affine ? "affine" : "similarity"; }

InvariantFunctional centroid_functional() {
    InvariantFunctional f;
    f.name = "centroid";
    f.equivariance_class = EquivarianceClass::affine;
    f.evaluator = [](const ConvexBody& k) { return k.centroid(); };
    return f;
}

InvariantFunctional mvee_center() {
    InvariantFunctional f;
    f.name = "mvee";
    f.equivariance_class = EquivarianceClass::affine;
    f.evaluator = [](const ConvexBody& k) { return minimum_volume_ellipsoid(k).center; };
    f.metadata = {{"eps", 1e-7}};
    return f;
}

InvariantFunctional similarity_extend(InvariantFunctional p_unit) {
    InvariantFunctional f;
    f.name = "extended:" + p_unit.name;
    f.equivariance_class = EquivarianceClass::similarity;
    f.of_body = p_unit.of_body;
    f.metadata = {{"inner", p_unit.name}, {"inner_metadata", p_unit.metadata}};
    auto inner = std::move(p_unit.evaluator);
    f.evaluator = [inner = std::move(inner)](const ConvexBody& k) {
        const Normalized unit = normalize(k);
        return unit.to_original.apply(inner(unit.body.representative()));
    };
    return f;
}

EquivarianceReport equivariance_report(const InvariantFunctional& p, const std::vector<ConvexBody>& bodies,
                                       const std::vector<AffineMap>& maps, double tol) {
    if (p.equivariance_class == EquivarianceClass::similarity)
        for (std::size_t j = 0; j < maps.size(); ++j)
            if (!as_similarity(maps[j]))
                throw ClassMismatch("map " + std::to_string(j) + " is not a similarity but '" + p.name +
                                    "' is only similarity-equivariant");

    EquivarianceReport report;
    report.functional = p.name;
    report.tol = tol;
    auto inside = [&](const ConvexBody& k, const Point& x) { return !p.of_body || contains(k, x, 1e-8 * k.diameter()); };

    for (std::size_t i = 0; i < bodies.size(); ++i) {
        const ConvexBody& k = bodies[i];
        const Point base = p(k);
        const bool base_inside = inside(k, base);
        for (std::size_t j = 0; j < maps.size(); ++j) {
            const ConvexBody image = apply_map(k, maps[j]);
            const Point value = p(image);
            EquivarianceRow row;
            row.body_id = i;
            row.map_id = j;
            row.residual = (value - maps[j].apply(base)).norm() / image.diameter();
            row.membership = base_inside && inside(image, value);
            report.max_residual = std::max(report.max_residual, row.residual);
            report.membership_ok = report.membership_ok && row.membership;
            report.rows.push_back(row);
        }
    }
    report.passed = report.max_residual <= tol && report.membership_ok;
    if (!report.membership_ok) report.warnings.push_back("some values fall outside their body");
    return report;
}

EquivarianceReport equivariance_report(const InvariantFunctional& p, const std::vector<ConvexBody>& bodies,
                                       const std::vector<Similarity>& maps, double tol) {
    std::vector<AffineMap> affine;
    affine.reserve(maps.size());
    for (const Similarity& s : maps) affine.push_back(s.to_affine());
    return equivariance_report(p, bodies, affine, tol);
}

}  // namespace invpt
