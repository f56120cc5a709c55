#pragma once

#include "invpt/body.hpp"
#include "invpt/similarity.hpp"

namespace invpt {

/// Deterministic quasi-uniform sample of the unit sphere, one direction per
/// column: +-1 in 1D, equally spaced angles in 2D, a Fibonacci lattice in 3D,
/// and fixed-seed normalized Gaussians above that.
class DirectionSet {
public:
    static constexpr int kDefaultCount = 2048;

    DirectionSet(int dim, int count = kDefaultCount);

    /// Shared instance with the default count; safe to use from any thread.
    static const DirectionSet& standard(int dim);

    int dim() const { return static_cast<int>(dirs_.rows()); }
    Eigen::Index size() const { return dirs_.cols(); }
    const Matrix& matrix() const { return dirs_; }

private:
    Matrix dirs_;
};

/// Support values h(u) for every direction u of the set.
Eigen::VectorXd support_profile(const Matrix& vertices, const DirectionSet& dirs);
inline Eigen::VectorXd support_profile(const ConvexBody& body, const DirectionSet& dirs) {
    return support_profile(body.vertex_matrix(), dirs);
}

/// max_u |h_a(u) - h_b(u)| over the direction set. Converges to the exact
/// Hausdorff distance from below as the set is refined.
double hausdorff_distance(const ConvexBody& a, const ConvexBody& b, const DirectionSet& dirs);
double hausdorff_distance(const ConvexBody& a, const ConvexBody& b);

struct ShiftFit {
    Point shift;
    double distance = 0.0;
    int iterations = 0;
};

/// min over t of max_i |diff_i - <t, u_i>|: the Chebyshev fit of a support
/// difference by a translation. Solved exactly as a small linear program with
/// a primal active-set method started from `start`. `length_scale` sets the
/// resolution below which the objective counts as zero. Throws NoConvergence
/// after 10^4 iterations.
ShiftFit minimize_over_shifts(const Eigen::VectorXd& diff, const DirectionSet& dirs, const Point& start,
                              double length_scale);

/// Best translation t minimizing hausdorff_distance(a, b + t), warm-started at
/// the centroid alignment.
ShiftFit align_translation(const ConvexBody& a, const ConvexBody& b, const DirectionSet& dirs);

/// Element of the space of bodies modulo translation, represented by the
/// copy whose centroid is at the origin.
class TranslationClass {
public:
    explicit TranslationClass(const ConvexBody& body);

    const ConvexBody& representative() const { return rep_; }
    int dim() const { return rep_.dim(); }

    /// The class of g(K) for a linear map g.
    TranslationClass transformed(const Matrix& linear) const;

private:
    ConvexBody rep_;
};

double class_distance(const TranslationClass& a, const TranslationClass& b, const DirectionSet& dirs);
double class_distance(const TranslationClass& a, const TranslationClass& b);

struct Normalized {
    TranslationClass body;     // unit volume, centroid at the origin
    Similarity to_original;    // maps `body` back onto the input
};

/// K -> V^{-1/n} (K - c(K)), together with the similarity undoing it.
Normalized normalize(const ConvexBody& body);

}  // namespace invpt
