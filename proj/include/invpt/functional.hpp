#pragma once

#include <functional>
#include <string>
#include <vector>

#include "json.hpp"

#include "invpt/body.hpp"
#include "invpt/similarity.hpp"

namespace invpt {

enum class EquivarianceClass { affine, similarity };

std::string to_string(EquivarianceClass c);

/// A point-valued map on convex bodies that commutes with every map of its
/// equivariance class. Functionals "of the body" also land inside the body.
struct InvariantFunctional {
    std::string name;
    EquivarianceClass equivariance_class = EquivarianceClass::affine;
    bool of_body = true;
    std::function<Point(const ConvexBody&)> evaluator;
    nlohmann::json metadata = nlohmann::json::object();

    Point operator()(const ConvexBody& body) const { return evaluator(body); }
};

/// Center of mass.
InvariantFunctional centroid_functional();

/// Center of the minimum-volume enclosing ellipsoid.
InvariantFunctional mvee_center();

/// Lifts a functional defined on unit-volume, centroid-centred bodies to all
/// bodies: p(F) = c(F) + V^{1/n} p_unit(V^{-1/n} (F - c(F))).
InvariantFunctional similarity_extend(InvariantFunctional p_unit);

struct EquivarianceRow {
    std::size_t body_id = 0;
    std::size_t map_id = 0;
    double residual = 0.0;  // |p(A K) - A p(K)| / diameter(A K)
    bool membership = true;
};

struct EquivarianceReport {
    std::string functional;
    double tol = 0.0;
    std::vector<EquivarianceRow> rows;
    double max_residual = 0.0;
    bool membership_ok = true;
    bool passed = true;
    std::vector<std::string> warnings;
};

/// Evaluates p on every body and every image A(K), in input order. Passes iff
/// every residual is <= tol and, for functionals of the body, every value
/// lies in its body within 1e-8 * diameter.
///
/// Throws ClassMismatch when a map outside the functional's class is given.
EquivarianceReport equivariance_report(const InvariantFunctional& p, const std::vector<ConvexBody>& bodies,
                                       const std::vector<AffineMap>& maps, double tol);
EquivarianceReport equivariance_report(const InvariantFunctional& p, const std::vector<ConvexBody>& bodies,
                                       const std::vector<Similarity>& maps, double tol);

}  // namespace invpt
