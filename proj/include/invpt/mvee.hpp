#pragma once

#include "invpt/body.hpp"

namespace invpt {

/// Minimum-volume enclosing ellipsoid {x : (x - center)^T shape (x - center) <= 1}.
struct Ellipsoid {
    Point center;
    Matrix shape;
    int iterations = 0;
    double gap = 0.0;  // final relative optimality gap
};

/// Khachiyan's barycentric ascent on the lifted vertices with Todd-Yildirim
/// away steps, run until the relative gap drops to `eps`. The center is the
/// weighted mean of the vertices, hence a point of the body.
///
/// Throws NoConvergence after `max_iterations`.
Ellipsoid minimum_volume_ellipsoid(const ConvexBody& body, double eps = 1e-7, int max_iterations = 100000);

}  // namespace invpt
