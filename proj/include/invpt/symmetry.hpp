#pragma once

#include <vector>

#include "invpt/body.hpp"
#include "invpt/similarity.hpp"

namespace invpt {

/// The finite group of similarities mapping a body onto itself. For a
/// bounded body every element is an isometry fixing the centroid.
struct SymmetryGroup {
    std::vector<Similarity> elements;  // elements[0] is the identity
    double tol = 0.0;                  // relative to the body's diameter
    Point center;

    std::size_t order() const { return elements.size(); }
};

/// Detects all isometries x -> Q (x - c) + c permuting the vertex set.
///
/// Candidate vertex correspondences for a fixed frame of dim vertices are
/// pruned by centroid distance and by the sorted multiset of distances to
/// the other vertices; each surviving correspondence is solved for Q by
/// orthogonal Procrustes and kept if it maps every vertex onto a vertex
/// within tol * diameter. The result is closed under composition.
///
/// Throws ToleranceAmbiguity when two distinct candidates differ by less than
/// 10 * tol, which signals a nearly symmetric input.
SymmetryGroup symmetry_group(const ConvexBody& body, double tol = 1e-6);

/// Conjugate group s G s^{-1}, the symmetry group of s(K).
SymmetryGroup conjugate(const SymmetryGroup& group, const Similarity& s);

/// True if `g` matches some element within `tol` (entrywise).
bool group_contains(const SymmetryGroup& group, const Similarity& g, double tol);

/// point + span(basis columns).
struct AffineSubspace {
    Point point;
    Matrix basis;  // dim x k, orthonormal columns

    int dim() const { return static_cast<int>(basis.cols()); }
    double distance(const Point& x) const;
};

/// All points fixed by every element of the group.
AffineSubspace fixed_point_set(const SymmetryGroup& group);

}  // namespace invpt
