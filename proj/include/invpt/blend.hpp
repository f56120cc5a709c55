#pragma once

#include <cstdint>
#include <memory>
#include <optional>

#include "invpt/functional.hpp"
#include "invpt/metric.hpp"

namespace invpt {

enum class BlendMode { soft, hard };

std::string to_string(BlendMode mode);
BlendMode blend_mode_from_string(const std::string& s);

/// Parameters of a blended functional anchored at (anchor, target).
struct BlendSpec {
    ConvexBody anchor;
    Point target;
    double eps_in = 0.0;        // phi1 = 1 for orbit distance <= eps_in
    double eps_out = 0.0;       // phi1 = 0 for orbit distance >= eps_out
    double kernel_width = 0.05; // soft-mode Gaussian width sigma
    int haar_budget = 16;       // Haar starts / samples per evaluation
    std::uint64_t seed = 0;
    BlendMode mode = BlendMode::hard;
};

/// Throws InvalidSpec unless 0 < eps_in < eps_out, the kernel width and
/// budget are usable, the target sits in the anchor's interior with margin
/// >= 1e-6 * diameter, and every symmetry of the anchor fixes the target
/// within 1e-8 * diameter.
void validate(const BlendSpec& spec);

/// C^1 quintic smoothstep cutoff: 1 on [0, eps_in], 0 on [eps_out, inf),
/// strictly decreasing in between.
double bump(double d, double eps_in, double eps_out);

struct BlendEvaluation {
    Point point;             // p(K)
    double distance = 0.0;   // orbit distance d(K) of the normalized class
    double phi1 = 0.0;
    bool tie = false;        // distinct alignments tied for the optimum
    Point unit_point;        // value on the normalized class
};

/// p(K) = phi1(d) delta(K^) + (1 - phi1(d)) theta(K^) on the normalized class
/// K^ of K, mapped back to K's coordinates. theta is the centroid (zero on
/// normalized classes). delta follows the best orbit alignment Q of the
/// anchor onto K^: Q x0 averaged over the anchor's stabilizer in hard mode,
/// a Gaussian-weighted Haar average of Q_j x0 in soft mode.
class BlendFunctional {
public:
    explicit BlendFunctional(BlendSpec spec);

    const BlendSpec& spec() const { return spec_; }
    const TranslationClass& anchor_unit() const { return anchor_unit_; }
    const Point& target_unit() const { return target_unit_; }

    /// Throws InteriorViolation if phi1 > 0 and the value leaves the body.
    BlendEvaluation evaluate(const ConvexBody& body) const;
    BlendEvaluation evaluate_unit(const TranslationClass& unit) const;

private:
    BlendSpec spec_;
    TranslationClass anchor_unit_;
    Similarity anchor_to_original_;
    Point target_unit_;
    std::vector<Matrix> stabilizer_;
};

InvariantFunctional blend_functional(const BlendSpec& spec);

/// The blend restricted to unit-volume, centroid-centred bodies (no interior
/// guard); similarity_extend of it agrees with blend_functional.
InvariantFunctional blend_unit_functional(const BlendSpec& spec);

struct SuggestedRadii {
    double gap = 0.0;  // smallest self-alignment residual away from the stabilizer
    double eps_in = 0.0;
    double eps_out = 0.0;
};

/// eps_out = 0.1 * gap and eps_in = 0.25 * eps_out, where gap is the smallest
/// local-optimum residual of the anchor against itself over rotations that
/// are not symmetries. Throws NoConvergence when no such optimum is found.
SuggestedRadii suggest_radii(const ConvexBody& anchor, std::uint64_t seed, int budget = 16);

}  // namespace invpt
