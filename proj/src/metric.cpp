#include "invpt/metric.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <deque>
#include <vector>

namespace invpt {

DirectionSet::DirectionSet(int dim, int count) {
    if (dim < 1) throw DimensionMismatch("direction set needs dim >= 1");
    if (dim == 1) {
        dirs_.resize(1, 2);
        dirs_ << 1.0, -1.0;
        return;
    }
    if (count < 2 * dim) throw DimensionMismatch("direction set too small");
    dirs_.resize(dim, count);
    if (dim == 2) {
        for (int k = 0; k < count; ++k) {
            const double a = 2.0 * std::numbers::pi * k / count;
            dirs_(0, k) = std::cos(a);
            dirs_(1, k) = std::sin(a);
        }
    } else if (dim == 3) {
        const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
        for (int k = 0; k < count; ++k) {
            const double z = 1.0 - (2.0 * k + 1.0) / count;
            const double r = std::sqrt(1.0 - z * z);
            const double phi = golden * k;
            dirs_(0, k) = r * std::cos(phi);
            dirs_(1, k) = r * std::sin(phi);
            dirs_(2, k) = z;
        }
    } else {
        std::mt19937_64 rng(0x5eedULL + static_cast<unsigned>(dim));
        std::normal_distribution<double> normal;
        for (int k = 0; k < count; ++k) {
            for (int i = 0; i < dim; ++i) dirs_(i, k) = normal(rng);
            dirs_.col(k).normalize();
        }
    }
}

const DirectionSet& DirectionSet::standard(int dim) {
    static const DirectionSet d1(1), d2(2), d3(3);
    switch (dim) {
        case 1: return d1;
        case 2: return d2;
        case 3: return d3;
        default: break;
    }
    thread_local std::deque<std::pair<int, DirectionSet>> extra;
    for (const auto& [d, set] : extra)
        if (d == dim) return set;
    extra.emplace_back(dim, DirectionSet(dim));
    return extra.back().second;
}

Eigen::VectorXd support_profile(const Matrix& vertices, const DirectionSet& dirs) {
    if (vertices.rows() != dirs.dim()) throw DimensionMismatch("direction set dimension differs from body");
    return (dirs.matrix().transpose() * vertices).rowwise().maxCoeff();
}

double hausdorff_distance(const ConvexBody& a, const ConvexBody& b, const DirectionSet& dirs) {
    if (a.dim() != b.dim()) throw DimensionMismatch("bodies have different dimensions");
    return (support_profile(a, dirs) - support_profile(b, dirs)).cwiseAbs().maxCoeff();
}

double hausdorff_distance(const ConvexBody& a, const ConvexBody& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("bodies have different dimensions");
    return hausdorff_distance(a, b, DirectionSet::standard(a.dim()));
}

namespace {

struct CoreFit {
    Point shift;
    double value;
    int iterations;
};

// Variables z = (t, s). For each column u_i of `u` and sign sg in {+1,-1}
// there is a constraint sg * (diff_i - <u_i, t>) <= s, written a^T z <= b
// with a = (-sg u_i, -1), b = -sg diff_i. The objective is min s. Primal
// active-set method; `iterations` accumulates across calls.
CoreFit solve_active_set(const Eigen::VectorXd& diff, const Matrix& u, const Point& start, double floor,
                         int& iterations, int max_iterations) {
    const Eigen::Index n = u.rows();
    const Eigen::Index m = u.cols();
    const Eigen::Index vars = n + 1;

    auto row = [&](Eigen::Index j) {
        Point a(vars);
        const double sg = j < m ? 1.0 : -1.0;
        a.head(n) = -sg * u.col(j % m);
        a(n) = -1.0;
        return a;
    };

    Point t = start;
    Eigen::VectorXd resid = diff - u.transpose() * t;
    Eigen::Index worst = 0;
    resid.cwiseAbs().maxCoeff(&worst);
    double s = std::abs(resid(worst));
    std::vector<Eigen::Index> active{resid(worst) >= 0 ? worst : worst + m};
    if (s <= floor) return {t, s, iterations};

    Point c = Point::Zero(vars);
    c(n) = 1.0;

    auto slack = [&](Eigen::Index j) {
        const double sg = j < m ? 1.0 : -1.0;
        return std::max(0.0, s - sg * resid(j % m));
    };

    bool last_step_degenerate = false;
    while (iterations < max_iterations) {
        ++iterations;
        const auto k = static_cast<Eigen::Index>(active.size());
        Matrix a(k, vars);
        for (Eigen::Index r = 0; r < k; ++r) a.row(r) = row(active[static_cast<std::size_t>(r)]).transpose();

        Point direction = Point::Zero(vars);
        Eigen::VectorXd mult;
        if (k < vars) {
            const Eigen::VectorXd y = (a * a.transpose()).ldlt().solve(a * c);
            direction = -(c - a.transpose() * y);
            mult = -y;
        } else {
            mult = a.transpose().fullPivLu().solve(-c);
        }

        if (direction.norm() <= 1e-12) {
            // c is in the span of the active normals: check KKT signs.
            Eigen::Index drop = -1;
            if (last_step_degenerate) {
                // Bland-style: lowest constraint index with a negative multiplier.
                for (Eigen::Index r = 0; r < k; ++r)
                    if (mult(r) < -1e-10 && (drop < 0 || active[static_cast<std::size_t>(r)] < active[static_cast<std::size_t>(drop)]))
                        drop = r;
            } else {
                double most = -1e-10;
                for (Eigen::Index r = 0; r < k; ++r)
                    if (mult(r) < most) {
                        most = mult(r);
                        drop = r;
                    }
            }
            if (drop < 0) return {t, s, iterations};
            active.erase(active.begin() + drop);
            continue;
        }

        // Ratio test against the inactive constraints.
        double step = std::numeric_limits<double>::infinity();
        Eigen::Index entering = -1;
        const Eigen::VectorXd udir = u.transpose() * direction.head(n);
        for (Eigen::Index j = 0; j < 2 * m; ++j) {
            if (std::find(active.begin(), active.end(), j) != active.end()) continue;
            const double sg = j < m ? 1.0 : -1.0;
            const double rate = -sg * udir(j % m) - direction(n);  // a_j^T p
            if (rate <= 1e-14 * direction.norm()) continue;
            const double alpha = slack(j) / rate;
            if (alpha < step) {
                step = alpha;
                entering = j;
            }
        }
        if (entering < 0) throw NoConvergence("shift fit is unbounded");

        last_step_degenerate = step * direction.norm() <= floor;
        t += step * direction.head(n);
        s += step * direction(n);
        resid = diff - u.transpose() * t;
        active.push_back(entering);
        if (s <= floor) return {t, s, iterations};
    }
    throw NoConvergence("shift fit did not converge in " + std::to_string(max_iterations) + " iterations");
}

}  // namespace

// Constraint generation: the active-set method runs on a working subset of
// directions, and the most violated remaining directions are added until
// none is violated, at which point the subset optimum is the full optimum.
ShiftFit minimize_over_shifts(const Eigen::VectorXd& diff, const DirectionSet& dirs, const Point& start,
                              double length_scale) {
    constexpr int kMaxIterations = 10000;
    constexpr Eigen::Index kInitialSubset = 32;
    constexpr Eigen::Index kAddPerRound = 8;
    const Eigen::Index n = dirs.dim();
    const Eigen::Index m = dirs.size();
    const Matrix& u = dirs.matrix();
    if (diff.size() != m || start.size() != n) throw DimensionMismatch("shift fit inputs have inconsistent sizes");

    // Objective values below this are indistinguishable from zero.
    const double floor = 1e-14 * length_scale;

    std::vector<char> in_subset(static_cast<std::size_t>(m), 0);
    std::vector<Eigen::Index> subset;
    const Eigen::Index stride = std::max<Eigen::Index>(1, m / kInitialSubset);
    for (Eigen::Index i = 0; i < m; i += stride) subset.push_back(i), in_subset[static_cast<std::size_t>(i)] = 1;

    int iterations = 0;
    Point t = start;
    while (true) {
        Matrix us(n, static_cast<Eigen::Index>(subset.size()));
        Eigen::VectorXd ds(us.cols());
        for (Eigen::Index c = 0; c < us.cols(); ++c) {
            us.col(c) = u.col(subset[static_cast<std::size_t>(c)]);
            ds(c) = diff(subset[static_cast<std::size_t>(c)]);
        }
        const CoreFit fit = solve_active_set(ds, us, t, floor, iterations, kMaxIterations);
        t = fit.shift;
        const Eigen::VectorXd resid = (diff - u.transpose() * t).cwiseAbs();
        const double level = std::max(fit.value, floor);

        std::vector<std::pair<double, Eigen::Index>> violated;
        for (Eigen::Index i = 0; i < m; ++i)
            if (!in_subset[static_cast<std::size_t>(i)] && resid(i) > level * (1.0 + 1e-12))
                violated.emplace_back(resid(i), i);
        if (violated.empty()) return {t, resid.maxCoeff(), iterations};

        const auto take = std::min<std::size_t>(violated.size(), kAddPerRound);
        std::partial_sort(violated.begin(), violated.begin() + static_cast<std::ptrdiff_t>(take), violated.end(),
                          [](const auto& a, const auto& b) { return a.first > b.first || (a.first == b.first && a.second < b.second); });
        for (std::size_t i = 0; i < take; ++i) {
            subset.push_back(violated[i].second);
            in_subset[static_cast<std::size_t>(violated[i].second)] = 1;
        }
    }
}

ShiftFit align_translation(const ConvexBody& a, const ConvexBody& b, const DirectionSet& dirs) {
    if (a.dim() != b.dim()) throw DimensionMismatch("bodies have different dimensions");
    const Eigen::VectorXd diff = support_profile(a, dirs) - support_profile(b, dirs);
    return minimize_over_shifts(diff, dirs, a.centroid() - b.centroid(), std::max(a.diameter(), b.diameter()));
}

namespace {

ConvexBody centered(const ConvexBody& body) {
    AffineMap shift = AffineMap::identity(body.dim());
    shift.translation = -body.centroid();
    return apply_map(body, shift);
}

}  // namespace

TranslationClass::TranslationClass(const ConvexBody& body) : rep_(centered(body)) {
    // One re-centering pass removes the residual rounding of the first.
    if (rep_.centroid().norm() > 1e-10 * rep_.diameter()) rep_ = centered(rep_);
}

TranslationClass TranslationClass::transformed(const Matrix& linear) const {
    return TranslationClass(apply_map(rep_, AffineMap{linear, Point::Zero(dim())}));
}

double class_distance(const TranslationClass& a, const TranslationClass& b, const DirectionSet& dirs) {
    return align_translation(a.representative(), b.representative(), dirs).distance;
}

double class_distance(const TranslationClass& a, const TranslationClass& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("classes have different dimensions");
    return class_distance(a, b, DirectionSet::standard(a.dim()));
}

Normalized normalize(const ConvexBody& body) {
    const int n = body.dim();
    const double lambda = std::pow(body.volume(), 1.0 / n);
    const Point& c = body.centroid();
    AffineMap to_unit{Matrix::Identity(n, n) / lambda, -c / lambda};
    TranslationClass unit(apply_map(body, to_unit));
    return {std::move(unit), Similarity(lambda, Matrix::Identity(n, n), c)};
}

}  // namespace invpt
