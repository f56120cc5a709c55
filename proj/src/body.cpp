#include "invpt/body.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <string>

namespace invpt {

namespace {

double max_pairwise_distance(const Matrix& pts) {
    double best = 0.0;
    for (Eigen::Index i = 0; i < pts.cols(); ++i)
        for (Eigen::Index j = i + 1; j < pts.cols(); ++j)
            best = std::max(best, (pts.col(i) - pts.col(j)).squaredNorm());
    return std::sqrt(best);
}

Matrix dedupe_points(const Matrix& pts, double eps) {
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < pts.cols(); ++i) {
        bool dup = false;
        for (Eigen::Index k : keep) {
            if ((pts.col(i) - pts.col(k)).norm() <= eps) {
                dup = true;
                break;
            }
        }
        if (!dup) keep.push_back(i);
    }
    Matrix out(pts.rows(), static_cast<Eigen::Index>(keep.size()));
    for (std::size_t k = 0; k < keep.size(); ++k) out.col(static_cast<Eigen::Index>(k)) = pts.col(keep[k]);
    return out;
}

// Unit normal of the hyperplane through the given dim points (as columns),
// or nothing when they are affinely dependent.
std::optional<Point> hyperplane_normal(const Matrix& pts, double length_scale) {
    const Eigen::Index n = pts.rows();
    if (n == 2) {
        Point d = pts.col(1) - pts.col(0);
        const double len = d.norm();
        if (len <= 1e-12 * length_scale) return std::nullopt;
        Point normal(2);
        normal << -d(1), d(0);
        return normal / len;
    }
    if (n == 3) {
        Eigen::Vector3d a = pts.col(1) - pts.col(0);
        Eigen::Vector3d b = pts.col(2) - pts.col(0);
        Eigen::Vector3d c = a.cross(b);
        const double len = c.norm();
        if (len <= 1e-12 * length_scale * length_scale) return std::nullopt;
        return Point(c / len);
    }
    Matrix diffs(n - 1, n);
    for (Eigen::Index k = 1; k < n; ++k) diffs.row(k - 1) = (pts.col(k) - pts.col(0)).transpose();
    Eigen::JacobiSVD<Matrix> svd(diffs, Eigen::ComputeFullV);
    if (svd.singularValues()(n - 2) <= 1e-12 * length_scale) return std::nullopt;
    return Point(svd.matrixV().col(n - 1));
}

int numeric_rank(const Matrix& rows, double threshold) {
    if (rows.rows() == 0) return 0;
    Eigen::JacobiSVD<Matrix> svd(rows);
    const auto& s = svd.singularValues();
    int rank = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > threshold) ++rank;
    return rank;
}

struct RawFacet {
    Point normal;
    double offset;
    std::vector<std::size_t> on_plane;
};

// Facets of the hull of `pts` by exhaustive search over dim-subsets: a subset
// spans a facet iff every point lies on one side of its hyperplane.
std::vector<RawFacet> enumerate_facets(const Matrix& pts, double eps, double scale) {
    const int n = static_cast<int>(pts.rows());
    const std::size_t count = static_cast<std::size_t>(pts.cols());
    const Point interior = pts.rowwise().mean();

    std::map<std::vector<std::size_t>, bool> seen;
    std::vector<RawFacet> facets;
    std::vector<std::size_t> idx(static_cast<std::size_t>(n));
    std::iota(idx.begin(), idx.end(), 0);
    Matrix subset(n, n);

    // Facets found so far, indexed by the points on them.
    std::vector<std::vector<std::size_t>> incident(count);
    auto already_covered = [&](const std::vector<std::size_t>& combo) {
        for (std::size_t fi : incident[combo[0]]) {
            const auto& on = facets[fi].on_plane;
            if (std::all_of(combo.begin() + 1, combo.end(),
                            [&](std::size_t c) { return std::binary_search(on.begin(), on.end(), c); }))
                return true;
        }
        return false;
    };

    while (true) {
        if (!already_covered(idx)) {
            for (int k = 0; k < n; ++k) subset.col(k) = pts.col(static_cast<Eigen::Index>(idx[static_cast<std::size_t>(k)]));
            if (auto normal = hyperplane_normal(subset, scale)) {
                Point a = *normal;
                double b = a.dot(subset.col(0));
                bool pos = false, neg = false;
                for (std::size_t p = 0; p < count && !(pos && neg); ++p) {
                    const double s = a.dot(pts.col(static_cast<Eigen::Index>(p))) - b;
                    if (s > eps) pos = true;
                    else if (s < -eps) neg = true;
                }
                if (!(pos && neg)) {
                    if (pos) {
                        a = -a;
                        b = -b;
                    }
                    std::vector<std::size_t> on_plane;
                    for (std::size_t p = 0; p < count; ++p)
                        if (std::abs(a.dot(pts.col(static_cast<Eigen::Index>(p))) - b) <= eps) on_plane.push_back(p);
                    if (seen.emplace(on_plane, true).second) {
                        // Refit through all on-plane points.
                        Matrix centered(n, static_cast<Eigen::Index>(on_plane.size()));
                        Point mean = Point::Zero(n);
                        for (std::size_t p : on_plane) mean += pts.col(static_cast<Eigen::Index>(p));
                        mean /= static_cast<double>(on_plane.size());
                        for (std::size_t k = 0; k < on_plane.size(); ++k)
                            centered.col(static_cast<Eigen::Index>(k)) = pts.col(static_cast<Eigen::Index>(on_plane[k])) - mean;
                        Eigen::JacobiSVD<Matrix> svd(centered, Eigen::ComputeFullU);
                        Point refit = svd.matrixU().col(n - 1);
                        if (refit.dot(a) < 0) refit = -refit;
                        if (refit.dot(mean - interior) < 0) refit = a;
                        for (std::size_t p : on_plane) incident[p].push_back(facets.size());
                        facets.push_back({refit, refit.dot(mean), std::move(on_plane)});
                    }
                }
            }
        }
        // next combination
        int k = n - 1;
        while (k >= 0 && idx[static_cast<std::size_t>(k)] == count - static_cast<std::size_t>(n - k)) --k;
        if (k < 0) break;
        ++idx[static_cast<std::size_t>(k)];
        for (int j = k + 1; j < n; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
    return facets;
}

}  // namespace

AffineMap AffineMap::identity(int dim) {
    return {Matrix::Identity(dim, dim), Point::Zero(dim)};
}

AffineMap AffineMap::compose(const AffineMap& inner) const {
    return {linear * inner.linear, linear * inner.translation + translation};
}

AffineMap AffineMap::inverse() const {
    if (std::abs(linear.determinant()) <= 1e-12) throw SingularMap("affine map is not invertible");
    Matrix inv = linear.inverse();
    return {inv, -inv * translation};
}

std::vector<Point> ConvexBody::vertices() const {
    std::vector<Point> out;
    out.reserve(num_vertices());
    for (Eigen::Index i = 0; i < vertices_.cols(); ++i) out.emplace_back(vertices_.col(i));
    return out;
}

ConvexBody::ConvexBody(Matrix vertices, std::vector<Facet> facets)
    : vertices_(std::move(vertices)), facets_(std::move(facets)) {
    diameter_ = max_pairwise_distance(vertices_);
    const int n = dim();
    centroid_ = Point::Zero(n);
    volume_ = 0.0;
    for (const Matrix& s : triangulate(*this)) {
        const double v = simplex_volume(s);
        volume_ += v;
        centroid_ += v * s.rowwise().mean();
    }
    if (!(volume_ > 0.0) || !std::isfinite(volume_))
        throw DegenerateInput("body has no interior (volume " + std::to_string(volume_) + ")");
    centroid_ /= volume_;
}

ConvexBody convex_hull(const std::vector<Point>& points, int dim) {
    Matrix m(dim, static_cast<Eigen::Index>(points.size()));
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i].size() != dim) throw DimensionMismatch("point " + std::to_string(i) + " has wrong dimension");
        m.col(static_cast<Eigen::Index>(i)) = points[i];
    }
    return convex_hull(m);
}

ConvexBody convex_hull(const Matrix& points) {
    const Eigen::Index n = points.rows();
    if (n < 1) throw DegenerateInput("dimension must be at least 1");
    if (!points.allFinite()) throw DegenerateInput("non-finite coordinates");
    if (points.cols() < n + 1) throw DegenerateInput("need at least dim+1 points");

    const double scale = max_pairwise_distance(points);
    const double eps = 1e-9 * scale;
    if (!(scale > 0.0)) throw DegenerateInput("all points coincide");
    Matrix pts = dedupe_points(points, eps);
    if (pts.cols() < n + 1) throw DegenerateInput("need at least dim+1 distinct points");

    {
        Matrix centered = pts.colwise() - pts.rowwise().mean();
        Eigen::JacobiSVD<Matrix> svd(centered);
        const auto& s = svd.singularValues();
        if (s(n - 1) <= 1e-9 * s(0)) throw DegenerateInput("points are affinely dependent (flat body)");
    }

    if (n == 1) {
        Eigen::Index lo = 0, hi = 0;
        pts.row(0).minCoeff(&lo);
        pts.row(0).maxCoeff(&hi);
        Matrix v(1, 2);
        v << pts(0, lo), pts(0, hi);
        std::vector<Facet> facets(2);
        facets[0] = {Point::Constant(1, -1.0), -v(0, 0), {0}};
        facets[1] = {Point::Constant(1, 1.0), v(0, 1), {1}};
        return ConvexBody(std::move(v), std::move(facets));
    }

    std::vector<RawFacet> raw = enumerate_facets(pts, eps, scale);

    // A point is extreme iff the normals of the facets through it span R^n.
    const std::size_t count = static_cast<std::size_t>(pts.cols());
    std::vector<std::vector<std::size_t>> incident(count);
    for (std::size_t f = 0; f < raw.size(); ++f)
        for (std::size_t p : raw[f].on_plane) incident[p].push_back(f);

    std::vector<long> remap(count, -1);
    std::vector<Eigen::Index> extreme;
    for (std::size_t p = 0; p < count; ++p) {
        Matrix normals(static_cast<Eigen::Index>(incident[p].size()), n);
        for (std::size_t k = 0; k < incident[p].size(); ++k)
            normals.row(static_cast<Eigen::Index>(k)) = raw[incident[p][k]].normal.transpose();
        if (numeric_rank(normals, 1e-10) == n) {
            remap[p] = static_cast<long>(extreme.size());
            extreme.push_back(static_cast<Eigen::Index>(p));
        }
    }

    Matrix verts(n, static_cast<Eigen::Index>(extreme.size()));
    for (std::size_t k = 0; k < extreme.size(); ++k) verts.col(static_cast<Eigen::Index>(k)) = pts.col(extreme[k]);

    std::vector<Facet> facets;
    facets.reserve(raw.size());
    for (auto& f : raw) {
        Facet out{std::move(f.normal), f.offset, {}};
        for (std::size_t p : f.on_plane)
            if (remap[p] >= 0) out.vertices.push_back(static_cast<std::size_t>(remap[p]));
        if (static_cast<Eigen::Index>(out.vertices.size()) < n)
            throw DegenerateInput("facet supported by fewer than dim vertices");
        facets.push_back(std::move(out));
    }
    return ConvexBody(std::move(verts), std::move(facets));
}

double simplex_volume(const Matrix& corners) {
    const Eigen::Index n = corners.rows();
    Matrix edges(n, n);
    for (Eigen::Index k = 0; k < n; ++k) edges.col(k) = corners.col(k + 1) - corners.col(0);
    double fact = 1.0;
    for (Eigen::Index k = 2; k <= n; ++k) fact *= static_cast<double>(k);
    return std::abs(edges.determinant()) / fact;
}

std::vector<Matrix> triangulate(const ConvexBody& body) {
    const int n = body.dim();
    const Matrix& verts = body.vertex_matrix();
    std::vector<Matrix> out;
    if (n == 1) {
        Matrix s(1, 2);
        s << verts.minCoeff(), verts.maxCoeff();
        out.push_back(std::move(s));
        return out;
    }
    const Point apex = body.vertex_barycenter();
    for (const Facet& f : body.facets()) {
        const auto k = static_cast<Eigen::Index>(f.vertices.size());
        Matrix fv(n, k);
        for (Eigen::Index i = 0; i < k; ++i) fv.col(i) = verts.col(static_cast<Eigen::Index>(f.vertices[static_cast<std::size_t>(i)]));

        std::vector<Matrix> faces;
        if (k == n) {
            faces.push_back(fv);
        } else {
            const Matrix basis = complement_basis(f.normal);
            const Point origin = fv.col(0);
            Matrix local = basis.transpose() * (fv.colwise() - origin);
            for (const Matrix& sub : triangulate(convex_hull(local)))
                faces.push_back((basis * sub).colwise() + origin);
        }
        for (const Matrix& face : faces) {
            Matrix s(n, n + 1);
            s.col(0) = apex;
            s.rightCols(n) = face;
            out.push_back(std::move(s));
        }
    }
    return out;
}

ConvexBody apply_map(const ConvexBody& body, const AffineMap& map) {
    if (map.dim() != body.dim() || map.linear.rows() != body.dim() || map.linear.cols() != body.dim())
        throw DimensionMismatch("map and body dimensions differ");
    const double det = map.linear.determinant();
    if (!(std::abs(det) > 1e-12)) throw SingularMap("linear part is singular");

    Matrix verts = (map.linear * body.vertex_matrix()).colwise() + map.translation;
    const Matrix inv_t = map.linear.inverse().transpose();
    std::vector<Facet> facets;
    facets.reserve(body.facets().size());
    for (const Facet& f : body.facets()) {
        Point normal = inv_t * f.normal;
        normal.normalize();
        double offset = 0.0;
        for (std::size_t v : f.vertices) offset += normal.dot(verts.col(static_cast<Eigen::Index>(v)));
        offset /= static_cast<double>(f.vertices.size());
        facets.push_back({std::move(normal), offset, f.vertices});
    }
    return ConvexBody(std::move(verts), std::move(facets));
}

double support_function(const ConvexBody& body, const Point& direction) {
    if (direction.size() != body.dim()) throw DimensionMismatch("direction has wrong dimension");
    if (!(direction.norm() > 0.0)) throw ZeroDirection("support function needs a non-zero direction");
    return (direction.transpose() * body.vertex_matrix()).maxCoeff();
}

bool contains(const ConvexBody& body, const Point& x, double tol) {
    if (x.size() != body.dim()) throw DimensionMismatch("point has wrong dimension");
    for (const Facet& f : body.facets())
        if (f.normal.dot(x) > f.offset + tol) return false;
    return true;
}

double interior_margin(const ConvexBody& body, const Point& x) {
    double margin = std::numeric_limits<double>::infinity();
    for (const Facet& f : body.facets()) margin = std::min(margin, f.offset - f.normal.dot(x));
    return margin;
}

bool same_vertex_set(const ConvexBody& a, const ConvexBody& b, double tol) {
    if (a.dim() != b.dim() || a.num_vertices() != b.num_vertices()) return false;
    const Matrix& va = a.vertex_matrix();
    const Matrix& vb = b.vertex_matrix();
    std::vector<bool> used(b.num_vertices(), false);
    for (Eigen::Index i = 0; i < va.cols(); ++i) {
        bool found = false;
        for (Eigen::Index j = 0; j < vb.cols(); ++j) {
            if (!used[static_cast<std::size_t>(j)] && (va.col(i) - vb.col(j)).cwiseAbs().maxCoeff() <= tol) {
                used[static_cast<std::size_t>(j)] = true;
                found = true;
                break;
            }
        }
        if (!found) return false;
    }
    return true;
}

}  // namespace invpt
