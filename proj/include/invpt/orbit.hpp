#pragma once

#include <functional>
#include <vector>

#include "invpt/haar.hpp"
#include "invpt/metric.hpp"

namespace invpt {

struct OrbitAlignOptions {
    double initial_step = 0.4;        // radians
    double angle_floor = 1e-8;        // refinement stops below this step
    int max_evals_per_start = 20000;  // a start that hits this is unconverged
    /// Also refine from the identity before the Haar starts.
    bool identity_start = true;
    /// Seed from vertex-frame correspondences between the two bodies (exact
    /// for bodies on the same orbit); the best `refined_seeds` are refined.
    bool vertex_seeds = true;
    int refined_seeds = 3;
    /// Relative slack when matching vertex radii and frame edge lengths.
    double seed_slack = 0.05;
    /// Stop early once a start reaches residual <= exact_hit * diameter.
    double exact_hit = 1e-13;
    /// Direction set for the class distances; the shared default when null.
    const DirectionSet* directions = nullptr;
};

struct LocalAlignment {
    Matrix rotation;
    double residual = 0.0;
    bool converged = false;
};

struct OrbitAlignment {
    Matrix rotation;  // best Q
    double residual = 0.0;
    std::vector<LocalAlignment> local_optima;  // one per start, in start order
};

/// r(Q) = class_distance(k, Q k0), evaluated on a fixed direction set.
class AlignmentObjective {
public:
    AlignmentObjective(const TranslationClass& k, const TranslationClass& k0, const DirectionSet& dirs);

    double operator()(const Matrix& rotation) const;
    int evaluations() const { return evaluations_; }

private:
    const DirectionSet& dirs_;
    Eigen::VectorXd target_;
    Matrix anchor_vertices_;
    double scale_;
    mutable int evaluations_ = 0;
};

/// Candidate rotations mapping a frame of k0's vertices onto vertices of k
/// with matching radii and pairwise distances, each solved by orthogonal
/// Procrustes. Deterministic; ordered by the enumeration.
std::vector<Matrix> vertex_frame_seeds(const TranslationClass& k, const TranslationClass& k0, double slack);

/// Approximately minimizes class_distance(k, Q k0) over Q in O(n) by
/// multi-start local refinement: the identity and the best vertex-frame
/// seeds, ranked by initial residual, then `budget` Haar starts, each refined by coordinate descent over
/// plane-rotation generators with step halving down to the angle floor.
/// Ties between starts go to the lowest start index. The residual is ~0 iff
/// k lies in the O(n)-orbit of k0.
///
/// Throws BudgetExhausted (carrying the best residual) when no start
/// converged within its evaluation cap.
OrbitAlignment orbit_align(const TranslationClass& k, const TranslationClass& k0, HaarSampler& sampler, int budget,
                           const OrbitAlignOptions& options = {});

/// (1/m) sum_j f(Q_j k) with Q_j drawn from the sampler.
double group_average_scalar(const std::function<double(const TranslationClass&)>& f, const TranslationClass& k,
                            HaarSampler& sampler, int m);

}  // namespace invpt
