#include "invpt/similarity.hpp"

#include <cmath>
#include <optional>

namespace invpt {

Similarity::Similarity(double scale, Matrix rotation, Point translation)
    : scale_(scale), rotation_(std::move(rotation)), translation_(std::move(translation)) {
    if (!(scale_ > 0.0) || !std::isfinite(scale_)) throw SingularMap("similarity scale must be positive");
    if (rotation_.rows() != rotation_.cols() || rotation_.rows() != translation_.size())
        throw DimensionMismatch("similarity parts have inconsistent dimensions");
    if (orthogonality_residual(rotation_) > 1e-10) rotation_ = nearest_orthogonal(rotation_);
}

Similarity Similarity::identity(int dim) {
    return {1.0, Matrix::Identity(dim, dim), Point::Zero(dim)};
}

Similarity Similarity::translation_by(const Point& t) {
    const auto n = t.size();
    return {1.0, Matrix::Identity(n, n), t};
}

Similarity Similarity::scaling(int dim, double scale) {
    return {scale, Matrix::Identity(dim, dim), Point::Zero(dim)};
}

Similarity Similarity::compose(const Similarity& inner) const {
    return {scale_ * inner.scale_, nearest_orthogonal(rotation_ * inner.rotation_),
            scale_ * (rotation_ * inner.translation_) + translation_};
}

Similarity Similarity::inverse() const {
    const Matrix qt = rotation_.transpose();
    return {1.0 / scale_, qt, -(qt * translation_) / scale_};
}

std::optional<Similarity> as_similarity(const AffineMap& map, double rel_tol) {
    const Eigen::Index n = map.linear.rows();
    const Matrix gram = map.linear.transpose() * map.linear;
    const double lambda2 = gram.trace() / static_cast<double>(n);
    if (!(lambda2 > 0.0)) return std::nullopt;
    if ((gram - lambda2 * Matrix::Identity(n, n)).cwiseAbs().maxCoeff() > rel_tol * lambda2) return std::nullopt;
    const double lambda = std::sqrt(lambda2);
    return Similarity(lambda, map.linear / lambda, map.translation);
}

double similarity_distance(const Similarity& a, const Similarity& b) {
    const double lin = (a.scale() * a.rotation() - b.scale() * b.rotation()).cwiseAbs().maxCoeff();
    const double tr = (a.translation() - b.translation()).cwiseAbs().maxCoeff();
    return std::max(lin, tr);
}

}  // namespace invpt
