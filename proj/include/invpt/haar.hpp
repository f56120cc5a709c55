#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "invpt/body.hpp"
#include "invpt/similarity.hpp"

namespace invpt {

/// Derives an independent sub-seed for a named stream (splitmix64 of the
/// seed xor'ed with the FNV-1a hash of the name), so adding a new consumer
/// never shifts the random stream of an existing one.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view stream);

/// Seeded source of Haar-distributed orthogonal matrices. A value object:
/// copies continue the same stream independently.
class HaarSampler {
public:
    HaarSampler(int dim, std::uint64_t seed);

    int dim() const { return dim_; }
    std::uint64_t seed() const { return seed_; }
    std::uint64_t count() const { return count_; }

    /// Gaussian matrix -> QR -> columns flipped to make diag(R) positive.
    /// Covers both components of O(n).
    Matrix next();

    std::mt19937_64& engine() { return engine_; }

private:
    int dim_;
    std::uint64_t seed_;
    std::uint64_t count_ = 0;
    std::mt19937_64 engine_;
};

inline Matrix haar_sample_orthogonal(HaarSampler& sampler) { return sampler.next(); }

/// Random affine map with condition number <= max_condition and a
/// translation in [-shift, shift]^n.
AffineMap random_affine_map(HaarSampler& sampler, double max_condition = 10.0, double shift = 3.0);

/// Random similarity with log-uniform scale in [min_scale, max_scale].
Similarity random_similarity(HaarSampler& sampler, double min_scale = 0.1, double max_scale = 10.0,
                             double shift = 3.0);

}  // namespace invpt
