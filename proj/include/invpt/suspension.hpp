#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "invpt/errors.hpp"
#include "invpt/functional.hpp"

namespace invpt {

/// conv(({0} x base) U {e_1, -e_1}): the double cone over an (n-1)-body,
/// with the base recentred at its centroid. The slice at height x_1 = s is
/// (1 - |s|) * base.
struct SuspensionBody {
    ConvexBody base;  // centred, dimension n - 1
    ConvexBody body;  // dimension n
    Matrix apexes;    // n x 2, columns e_1 and -e_1
};

/// Throws DegenerateBase if the base does not span its space or the
/// equatorial slice does not reproduce it.
SuspensionBody suspend(const ConvexBody& base);
SuspensionBody suspend(const Matrix& base_points);

/// Cross-section {y : (height, y) in body} as a body of dimension n - 1.
/// Throws DegenerateInput if the section is flat or empty.
ConvexBody slice(const ConvexBody& body, double height);

/// Star-shaped m-gon with radii 1 + 0.3 sum_{j=2..4} a_j cos(j theta + b_j)
/// at equally spaced angles, resampled until the polygon is convex with all m
/// vertices and has no nontrivial symmetry. Throws ResampleExhausted after
/// 100 attempts.
ConvexBody asymmetric_profile(int m, std::uint64_t seed);

/// g^(n-1) lattice over the base's bounding box, contracted towards the
/// centroid until every point is interior with margin >= 1e-3 * diameter.
std::vector<Point> interior_grid(const ConvexBody& base, int g);

struct SliceOptions {
    double group_tol = 1e-6;
    double confinement_tol = 1e-6;     // |x_1| relative to the diameter
    double achievability_tol = 1e-5;   // relative to the diameter
    double eps_in = 1e-4;
    double eps_out = 4e-4;
    int haar_budget = 4;
    std::uint64_t seed = 0;
};

struct AnchorResult {
    Point anchor;  // grid point embedded at x_1 = 0
    double residual = 0.0;
};

struct SliceReport {
    std::size_t group_order = 0;
    int fixed_dim = -1;
    double confinement_max = 0.0;
    std::vector<AnchorResult> achievability;
    std::vector<std::pair<std::string, bool>> clauses;  // in checking order
    bool passed = false;
    std::string failed_clause;
    std::string detail;
};

nlohmann::json to_json(const SliceReport& report);

class VerificationFailure : public Error {
public:
    explicit VerificationFailure(SliceReport report);
    const SliceReport& report() const noexcept { return report_; }

private:
    SliceReport report_;
};

/// Checks, stopping at the first failure:
///   i.   the symmetry group has order 2 and its nontrivial element is the
///        reflection x_1 -> -x_1;
///   ii.  its fixed set is the hyperplane x_1 = 0;
///   iii. every functional lands on that hyperplane, inside the base;
///   iv.  a hard blend anchored at (body, grid point) returns the grid point.
/// Grid points are given in base coordinates. Throws VerificationFailure
/// carrying the partial report.
SliceReport verify_fixed_slice(const SuspensionBody& susp, const std::vector<InvariantFunctional>& functionals,
                               const std::vector<Point>& grid, const SliceOptions& options = {});

}  // namespace invpt
