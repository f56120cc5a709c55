#include "invpt/symmetry.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>
#include <string>

namespace invpt {

namespace {

struct Signature {
    double radius;
    std::vector<double> distances;  // sorted
};

bool compatible(const Signature& a, const Signature& b, double eps) {
    if (std::abs(a.radius - b.radius) > eps) return false;
    for (std::size_t k = 0; k < a.distances.size(); ++k)
        if (std::abs(a.distances[k] - b.distances[k]) > eps) return false;
    return true;
}

// Greedy well-conditioned frame: each pick maximizes the component
// orthogonal to the span of the previous picks.
std::vector<std::size_t> pick_frame(const Matrix& rel) {
    const Eigen::Index n = rel.rows();
    std::vector<std::size_t> frame;
    Matrix basis(n, 0);
    for (Eigen::Index k = 0; k < n; ++k) {
        double best = -1.0;
        std::size_t arg = 0;
        for (Eigen::Index i = 0; i < rel.cols(); ++i) {
            Point r = rel.col(i);
            if (basis.cols() > 0) r -= basis * (basis.transpose() * r);
            if (r.norm() > best) {
                best = r.norm();
                arg = static_cast<std::size_t>(i);
            }
        }
        frame.push_back(arg);
        Point r = rel.col(static_cast<Eigen::Index>(arg));
        if (basis.cols() > 0) r -= basis * (basis.transpose() * r);
        basis.conservativeResize(n, basis.cols() + 1);
        basis.col(basis.cols() - 1) = r.normalized();
    }
    return frame;
}

double linear_distance(const Matrix& a, const Matrix& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

// Index of the stored rotation within `tol` of q, or -1.
long find_rotation(const std::vector<Matrix>& rots, const Matrix& q, double tol) {
    for (std::size_t i = 0; i < rots.size(); ++i)
        if (linear_distance(rots[i], q) <= tol) return static_cast<long>(i);
    return -1;
}

}  // namespace

SymmetryGroup symmetry_group(const ConvexBody& body, double tol) {
    const Eigen::Index n = body.dim();
    const Point c = body.centroid();
    const Matrix rel = body.vertex_matrix().colwise() - c;
    const auto count = static_cast<std::size_t>(rel.cols());
    const double diam = body.diameter();
    const double eps = tol * diam;

    std::vector<Signature> sig(count);
    for (std::size_t i = 0; i < count; ++i) {
        sig[i].radius = rel.col(static_cast<Eigen::Index>(i)).norm();
        for (std::size_t j = 0; j < count; ++j)
            if (j != i) sig[i].distances.push_back((rel.col(static_cast<Eigen::Index>(i)) - rel.col(static_cast<Eigen::Index>(j))).norm());
        std::sort(sig[i].distances.begin(), sig[i].distances.end());
    }

    const std::vector<std::size_t> frame = pick_frame(rel);
    Matrix frame_pts(n, n);
    for (Eigen::Index k = 0; k < n; ++k) frame_pts.col(k) = rel.col(static_cast<Eigen::Index>(frame[static_cast<std::size_t>(k)]));

    std::vector<std::vector<std::size_t>> options(static_cast<std::size_t>(n));
    for (Eigen::Index k = 0; k < n; ++k)
        for (std::size_t j = 0; j < count; ++j)
            if (compatible(sig[frame[static_cast<std::size_t>(k)]], sig[j], 2.0 * eps)) options[static_cast<std::size_t>(k)].push_back(j);

    std::vector<Matrix> found;
    std::vector<std::size_t> image(static_cast<std::size_t>(n));

    auto try_candidate = [&]() {
        Matrix target(n, n);
        for (Eigen::Index k = 0; k < n; ++k) target.col(k) = rel.col(static_cast<Eigen::Index>(image[static_cast<std::size_t>(k)]));
        Eigen::JacobiSVD<Matrix> svd(target * frame_pts.transpose(), Eigen::ComputeFullU | Eigen::ComputeFullV);
        const Matrix q = svd.matrixU() * svd.matrixV().transpose();
        const Matrix moved = q * rel;
        std::vector<bool> used(count, false);
        for (std::size_t i = 0; i < count; ++i) {
            long hit = -1;
            for (std::size_t j = 0; j < count; ++j) {
                if (!used[j] && (moved.col(static_cast<Eigen::Index>(i)) - rel.col(static_cast<Eigen::Index>(j))).norm() <= eps) {
                    hit = static_cast<long>(j);
                    break;
                }
            }
            if (hit < 0) return;
            used[static_cast<std::size_t>(hit)] = true;
        }
        for (const Matrix& other : found) {
            const double d = linear_distance(other, q);
            if (d <= tol) return;
            if (d <= 10.0 * tol)
                throw ToleranceAmbiguity("two candidate isometries differ by " + std::to_string(d) +
                                         " (< 10 * tol); the body is nearly symmetric");
        }
        found.push_back(q);
    };

    // Depth-first over frame images with pairwise-distance pruning.
    auto search = [&](auto&& self, Eigen::Index k) -> void {
        if (k == n) {
            try_candidate();
            return;
        }
        for (std::size_t j : options[static_cast<std::size_t>(k)]) {
            bool ok = true;
            for (Eigen::Index l = 0; l < k && ok; ++l) {
                const std::size_t jl = image[static_cast<std::size_t>(l)];
                if (jl == j) ok = false;
                else {
                    const double want = (frame_pts.col(k) - frame_pts.col(l)).norm();
                    const double got = (rel.col(static_cast<Eigen::Index>(j)) - rel.col(static_cast<Eigen::Index>(jl))).norm();
                    ok = std::abs(want - got) <= 2.0 * eps;
                }
            }
            if (!ok) continue;
            image[static_cast<std::size_t>(k)] = j;
            self(self, k + 1);
        }
    };
    search(search, 0);

    // Identity first, then closure under composition.
    const Matrix id = Matrix::Identity(n, n);
    std::vector<Matrix> rots{id};
    for (const Matrix& q : found)
        if (find_rotation(rots, q, tol) < 0) rots.push_back(q);
    for (std::size_t i = 0; i < rots.size(); ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            for (const Matrix& prod : {Matrix(rots[i] * rots[j]), Matrix(rots[j] * rots[i])}) {
                if (find_rotation(rots, prod, 10.0 * tol) < 0) {
                    rots.push_back(nearest_orthogonal(prod));
                    if (rots.size() > 100000) throw ToleranceAmbiguity("symmetry closure does not terminate");
                }
            }
        }
    }

    SymmetryGroup group;
    group.tol = tol;
    group.center = c;
    for (const Matrix& q : rots) {
        Similarity g(1.0, q, c - q * c);
        assert(g.scale() == 1.0);
        group.elements.push_back(std::move(g));
    }
    return group;
}

SymmetryGroup conjugate(const SymmetryGroup& group, const Similarity& s) {
    SymmetryGroup out;
    out.tol = group.tol;
    out.center = s.apply(group.center);
    const Similarity inv = s.inverse();
    for (const Similarity& g : group.elements) {
        Similarity h = s.compose(g).compose(inv);
        out.elements.emplace_back(1.0, h.rotation(), h.translation());
    }
    return out;
}

bool group_contains(const SymmetryGroup& group, const Similarity& g, double tol) {
    return std::any_of(group.elements.begin(), group.elements.end(),
                       [&](const Similarity& e) { return similarity_distance(e, g) <= tol; });
}

double AffineSubspace::distance(const Point& x) const {
    Point r = x - point;
    if (basis.cols() > 0) r -= basis * (basis.transpose() * r);
    return r.norm();
}

AffineSubspace fixed_point_set(const SymmetryGroup& group) {
    if (group.elements.empty()) throw DimensionMismatch("empty group");
    const Eigen::Index n = group.elements.front().dim();
    const auto k = static_cast<Eigen::Index>(group.elements.size());
    // x = s Q x + t  <=>  (s Q - I) x = -t
    Matrix a(n * k, n);
    Eigen::VectorXd b(n * k);
    for (Eigen::Index i = 0; i < k; ++i) {
        const Similarity& g = group.elements[static_cast<std::size_t>(i)];
        a.block(i * n, 0, n, n) = g.scale() * g.rotation() - Matrix::Identity(n, n);
        b.segment(i * n, n) = -g.translation();
    }
    Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeFullV);
    svd.setThreshold(1e-9);
    const Point x = svd.solve(b);
    const double scale = std::max(1.0, b.cwiseAbs().maxCoeff());
    if ((a * x - b).cwiseAbs().maxCoeff() > 1e-6 * scale)
        throw std::logic_error("finite isometry group without a common fixed point");
    const Eigen::Index rank = svd.rank();
    return {x, svd.matrixV().rightCols(n - rank)};
}

}  // namespace invpt
