#include "invpt/haar.hpp"

#include <cmath>

namespace invpt {

std::uint64_t derive_seed(std::uint64_t seed, std::string_view stream) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : stream) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    std::uint64_t z = seed ^ h;
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

HaarSampler::HaarSampler(int dim, std::uint64_t seed) : dim_(dim), seed_(seed), engine_(seed) {
    if (dim < 1) throw DimensionMismatch("Haar sampler needs dim >= 1");
}

Matrix HaarSampler::next() {
    std::normal_distribution<double> normal;
    Matrix g(dim_, dim_);
    for (int j = 0; j < dim_; ++j)
        for (int i = 0; i < dim_; ++i) g(i, j) = normal(engine_);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ() * Matrix::Identity(dim_, dim_);
    const Matrix& r = qr.matrixQR();
    for (int i = 0; i < dim_; ++i)
        if (r(i, i) < 0.0) q.col(i) = -q.col(i);
    ++count_;
    return q;
}

AffineMap random_affine_map(HaarSampler& sampler, double max_condition, double shift) {
    const int n = sampler.dim();
    std::uniform_real_distribution<double> log_sv(0.0, std::log(max_condition));
    std::uniform_real_distribution<double> offset(-shift, shift);
    Matrix u = sampler.next();
    Matrix v = sampler.next();
    Eigen::VectorXd sv(n);
    for (int i = 0; i < n; ++i) sv(i) = std::exp(log_sv(sampler.engine()));
    Point t(n);
    for (int i = 0; i < n; ++i) t(i) = offset(sampler.engine());
    return {u * sv.asDiagonal() * v.transpose(), t};
}

Similarity random_similarity(HaarSampler& sampler, double min_scale, double max_scale, double shift) {
    const int n = sampler.dim();
    std::uniform_real_distribution<double> log_scale(std::log(min_scale), std::log(max_scale));
    std::uniform_real_distribution<double> offset(-shift, shift);
    Matrix q = sampler.next();
    const double lambda = std::exp(log_scale(sampler.engine()));
    Point t(n);
    for (int i = 0; i < n; ++i) t(i) = offset(sampler.engine());
    return {lambda, q, t};
}

}  // namespace invpt
