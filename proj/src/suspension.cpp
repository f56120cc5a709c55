#include "invpt/suspension.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "invpt/blend.hpp"
#include "invpt/haar.hpp"
#include "invpt/metric.hpp"
#include "invpt/symmetry.hpp"

namespace invpt {

namespace {

std::vector<double> to_vector(const Point& p) { return {p.data(), p.data() + p.size()}; }

}  // namespace

SuspensionBody suspend(const ConvexBody& base) {
    const int m = base.dim();
    const int n = m + 1;
    AffineMap recentre = AffineMap::identity(m);
    recentre.translation = -base.centroid();
    ConvexBody centred = apply_map(base, recentre);

    Matrix pts(n, centred.num_vertices() + 2);
    pts.setZero();
    pts.block(1, 0, m, centred.num_vertices()) = centred.vertex_matrix();
    Matrix apexes = Matrix::Zero(n, 2);
    apexes(0, 0) = 1.0;
    apexes(0, 1) = -1.0;
    pts.rightCols(2) = apexes;

    ConvexBody body = convex_hull(pts);
    const ConvexBody equator = slice(body, 0.0);
    if (hausdorff_distance(equator, centred) > 1e-9 * std::max(1.0, centred.diameter()))
        throw DegenerateBase("equatorial slice of the suspension does not reproduce the base");
    return {std::move(centred), std::move(body), std::move(apexes)};
}

SuspensionBody suspend(const Matrix& base_points) {
    try {
        return suspend(convex_hull(base_points));
    } catch (const DegenerateInput& e) {
        throw DegenerateBase(std::string("base is degenerate: ") + e.what());
    }
}

ConvexBody slice(const ConvexBody& body, double height) {
    const Matrix& v = body.vertex_matrix();
    const Eigen::Index n = v.rows();
    if (n < 2) throw DimensionMismatch("slicing needs dimension >= 2");
    const double on_plane = 1e-12 * body.diameter();
    std::vector<Point> pts;
    for (Eigen::Index i = 0; i < v.cols(); ++i) {
        const double hi = v(0, i) - height;
        if (std::abs(hi) <= on_plane) {
            pts.push_back(v.col(i).tail(n - 1));
            continue;
        }
        for (Eigen::Index j = i + 1; j < v.cols(); ++j) {
            const double hj = v(0, j) - height;
            if (std::abs(hj) <= on_plane || (hi > 0) == (hj > 0)) continue;
            const double w = hi / (hi - hj);
            pts.push_back(((1.0 - w) * v.col(i) + w * v.col(j)).tail(n - 1));
        }
    }
    if (pts.empty()) throw DegenerateInput("slice height misses the body");
    return convex_hull(pts, static_cast<int>(n - 1));
}

ConvexBody asymmetric_profile(int m, std::uint64_t seed) {
    if (m < 12) throw InvalidSpec("asymmetric profile needs at least 12 vertices");
    std::mt19937_64 rng(derive_seed(seed, "asymmetric_profile"));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    constexpr int kTries = 100;
    for (int attempt = 0; attempt < kTries; ++attempt) {
        double a[5] = {}, b[5] = {};
        for (int j = 2; j <= 4; ++j) {
            a[j] = unit(rng) / j;
            b[j] = 2.0 * std::numbers::pi * unit(rng);
        }
        Matrix pts(2, m);
        for (int i = 0; i < m; ++i) {
            const double theta = 2.0 * std::numbers::pi * i / m;
            double r = 1.0;
            for (int j = 2; j <= 4; ++j) r += 0.3 * a[j] * std::cos(j * theta + b[j]);
            pts(0, i) = r * std::cos(theta);
            pts(1, i) = r * std::sin(theta);
        }
        ConvexBody poly = convex_hull(pts);
        if (poly.num_vertices() != m) continue;
        try {
            if (symmetry_group(poly).order() == 1) return poly;
        } catch (const ToleranceAmbiguity&) {
        }
    }
    throw ResampleExhausted("no convex asymmetric profile found in " + std::to_string(kTries) + " attempts");
}

std::vector<Point> interior_grid(const ConvexBody& base, int g) {
    if (g < 1) throw InvalidSpec("grid size must be positive");
    const int n = base.dim();
    const Matrix& v = base.vertex_matrix();
    const Point lo = v.rowwise().minCoeff();
    const Point hi = v.rowwise().maxCoeff();
    const Point c = base.centroid();

    std::vector<Point> lattice;
    long total = 1;
    for (int i = 0; i < n; ++i) total *= g;
    for (long idx = 0; idx < total; ++idx) {
        Point p(n);
        long rest = idx;
        for (int i = 0; i < n; ++i) {
            const double f = g == 1 ? 0.5 : static_cast<double>(rest % g) / (g - 1);
            p(i) = lo(i) + f * (hi(i) - lo(i));
            rest /= g;
        }
        lattice.push_back(p);
    }

    const double margin = 1e-3 * base.diameter();
    double shrink = 1.0;
    for (int round = 0; round < 200; ++round) {
        std::vector<Point> pts;
        bool ok = true;
        for (const Point& p : lattice) {
            pts.push_back(c + shrink * (p - c));
            ok = ok && interior_margin(base, pts.back()) >= margin;
        }
        if (ok) return pts;
        shrink *= 0.9;
    }
    throw DegenerateInput("could not fit an interior grid into the base");
}

nlohmann::json to_json(const SliceReport& report) {
    nlohmann::json j;
    j["group_order"] = report.group_order;
    j["fixed_dim"] = report.fixed_dim;
    j["confinement_max"] = report.confinement_max;
    j["achievability"] = nlohmann::json::array();
    for (const AnchorResult& a : report.achievability)
        j["achievability"].push_back({{"anchor", to_vector(a.anchor)}, {"residual", a.residual}});
    j["clauses"] = nlohmann::json::object();
    for (const auto& [name, ok] : report.clauses) j["clauses"][name] = ok;
    j["passed"] = report.passed;
    j["failed_clause"] = report.failed_clause.empty() ? nlohmann::json(nullptr) : nlohmann::json(report.failed_clause);
    if (!report.detail.empty()) j["detail"] = report.detail;
    return j;
}

VerificationFailure::VerificationFailure(SliceReport report)
    : Error("VerificationFailure", "clause (" + report.failed_clause + ") failed: " + report.detail),
      report_(std::move(report)) {}

SliceReport verify_fixed_slice(const SuspensionBody& susp, const std::vector<InvariantFunctional>& functionals,
                               const std::vector<Point>& grid, const SliceOptions& options) {
    const ConvexBody& k = susp.body;
    const int n = k.dim();
    const double diam = k.diameter();
    SliceReport report;

    auto fail = [&](const std::string& clause, const std::string& detail) {
        report.clauses.emplace_back(clause, false);
        report.failed_clause = clause;
        report.detail = detail;
        throw VerificationFailure(report);
    };

    // (i) order-2 group generated by the reflection in x_1.
    const SymmetryGroup group = symmetry_group(k, options.group_tol);
    report.group_order = group.order();
    if (group.order() != 2) fail("i", "symmetry group has order " + std::to_string(group.order()) + ", expected 2");
    Matrix reflection = Matrix::Identity(n, n);
    reflection(0, 0) = -1.0;
    const Similarity& g = group.elements[1];
    const AffineMap ga = g.to_affine();
    if ((ga.linear - reflection).cwiseAbs().maxCoeff() > options.group_tol ||
        ga.translation.norm() > options.group_tol * diam)
        fail("i", "nontrivial symmetry is not the reflection x_1 -> -x_1");
    report.clauses.emplace_back("i", true);

    // (ii) fixed set is the hyperplane x_1 = 0.
    const AffineSubspace fixed = fixed_point_set(group);
    report.fixed_dim = fixed.dim();
    if (fixed.dim() != n - 1 || std::abs(fixed.point(0)) > options.group_tol * diam ||
        fixed.basis.row(0).cwiseAbs().maxCoeff() > options.group_tol)
        fail("ii", "fixed point set is not the hyperplane x_1 = 0");
    report.clauses.emplace_back("ii", true);

    // (iii) every functional lies on the equator, inside the base.
    for (const InvariantFunctional& p : functionals) {
        const Point value = p(k);
        report.confinement_max = std::max(report.confinement_max, std::abs(value(0)));
        if (std::abs(value(0)) > options.confinement_tol * diam)
            fail("iii", "functional '" + p.name + "' leaves the hyperplane x_1 = 0");
        if (!contains(susp.base, value.tail(n - 1), 1e-8 * diam))
            fail("iii", "functional '" + p.name + "' leaves the base");
    }
    report.clauses.emplace_back("iii", true);

    // (iv) anchored hard blends reproduce every grid point.
    for (const Point& y : grid) {
        if (y.size() != n - 1) throw DimensionMismatch("grid points must live in the base's dimension");
        Point x0(n);
        x0(0) = 0.0;
        x0.tail(n - 1) = y;
        BlendSpec spec{k, x0};
        spec.eps_in = options.eps_in;
        spec.eps_out = options.eps_out;
        spec.haar_budget = options.haar_budget;
        spec.seed = options.seed;
        spec.mode = BlendMode::hard;
        const BlendFunctional blend(spec);
        const double residual = (blend.evaluate(k).point - x0).norm() / diam;
        report.achievability.push_back({x0, residual});
        if (residual > options.achievability_tol)
            fail("iv", "anchored blend misses its anchor by " + std::to_string(residual) + " diameters");
    }
    report.clauses.emplace_back("iv", true);
    report.passed = true;
    return report;
}

}  // namespace invpt
