#include "invpt/orbit.hpp"

#include <cmath>
#include <algorithm>
#include <limits>

namespace invpt {

AlignmentObjective::AlignmentObjective(const TranslationClass& k, const TranslationClass& k0, const DirectionSet& dirs)
    : dirs_(dirs),
      target_(support_profile(k.representative(), dirs)),
      anchor_vertices_(k0.representative().vertex_matrix()),
      scale_(std::max(k.representative().diameter(), k0.representative().diameter())) {
    if (k.dim() != k0.dim()) throw DimensionMismatch("classes have different dimensions");
}

double AlignmentObjective::operator()(const Matrix& rotation) const {
    ++evaluations_;
    const Eigen::VectorXd diff = target_ - support_profile(rotation * anchor_vertices_, dirs_);
    return minimize_over_shifts(diff, dirs_, Point::Zero(dirs_.dim()), scale_).distance;
}

namespace {

Matrix plane_rotation(Eigen::Index n, Eigen::Index i, Eigen::Index j, double angle) {
    Matrix r = Matrix::Identity(n, n);
    const double c = std::cos(angle), s = std::sin(angle);
    r(i, i) = c;
    r(j, j) = c;
    r(i, j) = -s;
    r(j, i) = s;
    return r;
}

LocalAlignment refine(const AlignmentObjective& objective, Matrix q, const OrbitAlignOptions& options, double hit) {
    const Eigen::Index n = q.rows();
    double best = objective(q);
    const int start_evals = objective.evaluations();
    double step = options.initial_step;
    bool converged = true;
    while (step >= options.angle_floor && best > hit) {
        bool improved = false;
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = i + 1; j < n; ++j) {
                for (double sign : {1.0, -1.0}) {
                    Matrix cand = q * plane_rotation(n, i, j, sign * step);
                    const double r = objective(cand);
                    if (r < best) {
                        best = r;
                        q = std::move(cand);
                        improved = true;
                        break;
                    }
                }
            }
        }
        if (!improved) step *= 0.5;
        if (objective.evaluations() - start_evals > options.max_evals_per_start) {
            converged = false;
            break;
        }
    }
    q = nearest_orthogonal(q);
    return {q, objective(q), converged};
}

// Greedy frame: each pick maximizes the component orthogonal to the span of
// the previous picks.
std::vector<Eigen::Index> frame_of(const Matrix& pts) {
    const Eigen::Index n = pts.rows();
    std::vector<Eigen::Index> frame;
    Matrix basis(n, 0);
    for (Eigen::Index k = 0; k < n; ++k) {
        Eigen::Index arg = 0;
        double best = -1.0;
        for (Eigen::Index i = 0; i < pts.cols(); ++i) {
            Point r = pts.col(i);
            if (basis.cols() > 0) r -= basis * (basis.transpose() * r);
            if (r.norm() > best) best = r.norm(), arg = i;
        }
        frame.push_back(arg);
        Point r = pts.col(arg);
        if (basis.cols() > 0) r -= basis * (basis.transpose() * r);
        basis.conservativeResize(n, basis.cols() + 1);
        basis.col(basis.cols() - 1) = r.normalized();
    }
    return frame;
}

}  // namespace

std::vector<Matrix> vertex_frame_seeds(const TranslationClass& k, const TranslationClass& k0, double slack) {
    const Matrix& target = k.representative().vertex_matrix();
    const Matrix& anchor = k0.representative().vertex_matrix();
    const Eigen::Index n = anchor.rows();
    const double eps = slack * std::max(k.representative().diameter(), k0.representative().diameter());
    const std::vector<Eigen::Index> frame = frame_of(anchor);

    std::vector<Matrix> seeds;
    std::vector<Eigen::Index> image(static_cast<std::size_t>(n));
    auto search = [&](auto&& self, Eigen::Index level) -> void {
        if (level == n) {
            Matrix src(n, n), dst(n, n);
            for (Eigen::Index c = 0; c < n; ++c) {
                src.col(c) = anchor.col(frame[static_cast<std::size_t>(c)]);
                dst.col(c) = target.col(image[static_cast<std::size_t>(c)]);
            }
            seeds.push_back(nearest_orthogonal(dst * src.transpose()));
            return;
        }
        const Point b = anchor.col(frame[static_cast<std::size_t>(level)]);
        for (Eigen::Index j = 0; j < target.cols(); ++j) {
            if (std::abs(target.col(j).norm() - b.norm()) > eps) continue;
            bool ok = true;
            for (Eigen::Index l = 0; l < level && ok; ++l) {
                const Eigen::Index jl = image[static_cast<std::size_t>(l)];
                const double want = (b - anchor.col(frame[static_cast<std::size_t>(l)])).norm();
                ok = jl != j && std::abs((target.col(j) - target.col(jl)).norm() - want) <= eps;
            }
            if (!ok) continue;
            image[static_cast<std::size_t>(level)] = j;
            self(self, level + 1);
        }
    };
    search(search, 0);
    return seeds;
}

OrbitAlignment orbit_align(const TranslationClass& k, const TranslationClass& k0, HaarSampler& sampler, int budget,
                           const OrbitAlignOptions& options) {
    if (k.dim() != k0.dim()) throw DimensionMismatch("classes have different dimensions");
    if (sampler.dim() != k.dim()) throw DimensionMismatch("sampler dimension differs from the classes");
    const DirectionSet& dirs = options.directions ? *options.directions : DirectionSet::standard(k.dim());
    const AlignmentObjective objective(k, k0, dirs);
    const double hit = options.exact_hit * std::max(k.representative().diameter(), k0.representative().diameter());

    OrbitAlignment out;
    out.residual = std::numeric_limits<double>::infinity();
    const int n = k.dim();

    if (options.identity_start) {
        const Matrix identity = Matrix::Identity(n, n);
        const double r = objective(identity);
        if (r <= hit) {
            out.rotation = identity;
            out.residual = r;
            out.local_optima.push_back({identity, r, true});
            return out;
        }
    }

    // Deterministic starts, best initial residual first.
    std::vector<Matrix> candidates;
    std::size_t keep = 0;
    if (options.identity_start) {
        candidates.push_back(Matrix::Identity(n, n));
        ++keep;
    }
    if (options.vertex_seeds && options.refined_seeds > 0) {
        std::vector<Matrix> seeds = vertex_frame_seeds(k, k0, options.seed_slack);
        keep += std::min(seeds.size(), static_cast<std::size_t>(options.refined_seeds));
        for (Matrix& q : seeds) candidates.push_back(std::move(q));
    }
    std::vector<std::pair<double, std::size_t>> scored;
    for (std::size_t i = 0; i < candidates.size(); ++i) scored.emplace_back(objective(candidates[i]), i);
    std::stable_sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<Matrix> starts;
    for (std::size_t i = 0; i < keep; ++i) starts.push_back(candidates[scored[i].second]);
    const std::size_t fixed_starts = starts.size();

    for (std::size_t s = 0; s < fixed_starts + static_cast<std::size_t>(std::max(budget, 0)); ++s) {
        Matrix q0 = s < fixed_starts ? starts[s] : sampler.next();
        LocalAlignment local = refine(objective, std::move(q0), options, hit);
        if (local.residual < out.residual) {
            out.residual = local.residual;
            out.rotation = local.rotation;
        }
        out.local_optima.push_back(std::move(local));
        if (out.residual <= hit) break;
    }
    const bool any_converged = std::any_of(out.local_optima.begin(), out.local_optima.end(),
                                           [](const LocalAlignment& l) { return l.converged; });
    if (!any_converged)
        throw BudgetExhausted("no alignment start converged", out.residual);
    return out;
}

double group_average_scalar(const std::function<double(const TranslationClass&)>& f, const TranslationClass& k,
                            HaarSampler& sampler, int m) {
    if (m < 1) throw DimensionMismatch("group average needs at least one sample");
    // Running mean: a constant integrand is reproduced exactly.
    double mean = 0.0;
    for (int j = 0; j < m; ++j) {
        const double v = f(k.transformed(sampler.next()));
        mean += (v - mean) / static_cast<double>(j + 1);
    }
    return mean;
}

}  // namespace invpt
