#pragma once

#include <optional>

#include "invpt/body.hpp"

namespace invpt {

/// x -> scale * rotation * x + translation, scale > 0 and rotation orthogonal.
class Similarity {
public:
    Similarity(double scale, Matrix rotation, Point translation);

    static Similarity identity(int dim);
    static Similarity translation_by(const Point& t);
    static Similarity scaling(int dim, double scale);

    int dim() const { return static_cast<int>(translation_.size()); }
    double scale() const { return scale_; }
    const Matrix& rotation() const { return rotation_; }
    const Point& translation() const { return translation_; }

    Point apply(const Point& x) const { return scale_ * (rotation_ * x) + translation_; }
    AffineMap to_affine() const { return {scale_ * rotation_, translation_}; }

    /// (*this) after `inner`; the rotation is re-orthonormalized.
    Similarity compose(const Similarity& inner) const;
    Similarity inverse() const;

private:
    double scale_;
    Matrix rotation_;
    Point translation_;
};

inline ConvexBody apply_map(const ConvexBody& body, const Similarity& s) {
    return apply_map(body, s.to_affine());
}

/// Recognizes A = lambda * Q. Returns nothing for maps that are not similarities.
std::optional<Similarity> as_similarity(const AffineMap& map, double rel_tol = 1e-9);

/// Max-entry distance between the linear and translation parts.
double similarity_distance(const Similarity& a, const Similarity& b);

}  // namespace invpt
