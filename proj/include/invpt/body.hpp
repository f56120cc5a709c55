#pragma once

#include <cstddef>
#include <vector>

#include "invpt/errors.hpp"
#include "invpt/linalg.hpp"

namespace invpt {

/// x -> linear * x + translation.
struct AffineMap {
    Matrix linear;
    Point translation;

    static AffineMap identity(int dim);

    int dim() const { return static_cast<int>(translation.size()); }
    Point apply(const Point& x) const { return linear * x + translation; }

    /// (*this) after `inner`.
    AffineMap compose(const AffineMap& inner) const;
    AffineMap inverse() const;
};

/// Half-space <normal, x> <= offset with a unit outward normal, plus the
/// indices of the body's vertices lying on its boundary hyperplane.
struct Facet {
    Point normal;
    double offset = 0.0;
    std::vector<std::size_t> vertices;
};

/// A full-dimensional convex polytope. Vertices are the source of truth;
/// facets, volume and centroid are derived eagerly at construction so a
/// body is immutable and safe to share between threads.
class ConvexBody {
public:
    int dim() const { return static_cast<int>(vertices_.rows()); }
    std::size_t num_vertices() const { return static_cast<std::size_t>(vertices_.cols()); }

    /// Vertices as columns (dim x num_vertices).
    const Matrix& vertex_matrix() const { return vertices_; }
    Point vertex(std::size_t i) const { return vertices_.col(static_cast<Eigen::Index>(i)); }
    std::vector<Point> vertices() const;

    const std::vector<Facet>& facets() const { return facets_; }

    double volume() const { return volume_; }
    const Point& centroid() const { return centroid_; }
    double diameter() const { return diameter_; }

    /// Mean of the vertices; the apex of the fan triangulation.
    Point vertex_barycenter() const { return vertices_.rowwise().mean(); }

    /// Default absolute tolerance for geometric predicates on this body.
    double tolerance() const { return 1e-9 * diameter_; }

private:
    ConvexBody(Matrix vertices, std::vector<Facet> facets);

    friend ConvexBody convex_hull(const Matrix& points);
    friend ConvexBody apply_map(const ConvexBody& body, const AffineMap& map);

    Matrix vertices_;
    std::vector<Facet> facets_;
    double diameter_ = 0.0;
    double volume_ = 0.0;
    Point centroid_;
};

/// Convex hull of the columns of `points` (dim x count).
/// Throws DegenerateInput when the points do not span a full-dimensional body.
ConvexBody convex_hull(const Matrix& points);
ConvexBody convex_hull(const std::vector<Point>& points, int dim);

/// Simplicial decomposition: each entry is a dim x (dim+1) matrix of simplex
/// corners. Facets are triangulated recursively in their own hyperplane and
/// coned to the vertex barycenter.
std::vector<Matrix> triangulate(const ConvexBody& body);

double simplex_volume(const Matrix& corners);

inline double volume(const ConvexBody& body) { return body.volume(); }
inline Point centroid(const ConvexBody& body) { return body.centroid(); }

/// Image of a body under an invertible affine map. The facet structure is
/// carried over; volume and centroid are recomputed from the image geometry.
ConvexBody apply_map(const ConvexBody& body, const AffineMap& map);

/// max over vertices of <v, direction>. Positively homogeneous, so callers
/// normally pass unit directions. Throws ZeroDirection for a null vector.
double support_function(const ConvexBody& body, const Point& direction);

/// True iff <a_i, x> <= b_i + tol for every facet.
bool contains(const ConvexBody& body, const Point& x, double tol);

/// min_i (b_i - <a_i, x>): positive inside, zero on the boundary.
double interior_margin(const ConvexBody& body, const Point& x);

/// Vertex sets agree up to reordering within `tol`.
bool same_vertex_set(const ConvexBody& a, const ConvexBody& b, double tol);

}  // namespace invpt
