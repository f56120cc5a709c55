// Acceptance suite: one PASS/FAIL line per criterion; exit status is the
// number of failed criteria (capped at 1).

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <sys/wait.h>
#include <unistd.h>

#include "invpt/blend.hpp"
#include "invpt/functional.hpp"
#include "invpt/haar.hpp"
#include "invpt/metric.hpp"
#include "invpt/suspension.hpp"
#include "invpt/symmetry.hpp"
#include "test_support.hpp"

using namespace invpt;
using namespace testing_support;
namespace fs = std::filesystem;

namespace {

struct Verdict {
    bool pass;
    std::string detail;
};

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(3);
    os << x;
    return os.str();
}

std::vector<ConvexBody> random_bodies(std::uint64_t seed, int count, int dim) {
    std::mt19937_64 rng(seed);
    std::vector<ConvexBody> out;
    for (int i = 0; i < count; ++i) out.push_back(random_body(rng, dim, 6 + i % 9));
    return out;
}

Verdict geometry_oracles() {
    double worst_vol = 0.0, worst_centroid = 0.0;
    std::vector<ConvexBody> bodies = random_bodies(101, 10, 2);
    for (const ConvexBody& k : random_bodies(102, 10, 3)) bodies.push_back(k);
    for (std::size_t i = 0; i < bodies.size(); ++i) {
        const ConvexBody& k = bodies[i];
        const MonteCarloMoments mc = monte_carlo_moments(k, 1000000, 7000 + i);
        worst_vol = std::max(worst_vol, std::abs(k.volume() - mc.volume) / mc.volume);
        worst_centroid = std::max(worst_centroid, (k.centroid() - mc.centroid).norm() / k.diameter());
    }
    double closed = 0.0;
    for (int n : {2, 3}) {
        std::vector<Point> simplex{Point::Zero(n)};
        for (int i = 0; i < n; ++i) simplex.push_back(Point::Unit(n, i));
        const ConvexBody s = convex_hull(simplex, n);
        const double fact = n == 2 ? 2.0 : 6.0;
        closed = std::max(closed, std::abs(s.volume() - 1.0 / fact));
        closed = std::max(closed, (s.centroid() - Point::Constant(n, 1.0 / (n + 1))).cwiseAbs().maxCoeff());
        const ConvexBody c = unit_cube(n);
        closed = std::max(closed, std::abs(c.volume() - 1.0));
        closed = std::max(closed, (c.centroid() - Point::Constant(n, 0.5)).cwiseAbs().maxCoeff());
    }
    return {worst_vol <= 0.01 && worst_centroid <= 0.01 && closed <= 1e-12,
            "max MC volume rel err " + fmt(worst_vol) + ", centroid rel err " + fmt(worst_centroid) +
                ", closed-form err " + fmt(closed)};
}

Verdict metric() {
    std::mt19937_64 rng(202);
    double worst_grid = 0.0;
    for (int i = 0; i < 10; ++i) {
        const TranslationClass a(random_body(rng, 2, 8)), b(random_body(rng, 2, 8));
        const double oracle = grid_search_class_distance_2d(a.representative(), b.representative());
        worst_grid = std::max(worst_grid, std::abs(class_distance(a, b) - oracle));
    }
    double worst_shift = 0.0;
    std::uniform_real_distribution<double> shift(-10.0, 10.0);
    for (int i = 0; i < 20; ++i) {
        const int n = 2 + i % 2;
        const ConvexBody k = random_body(rng, n, 10);
        Point t(n);
        for (int d = 0; d < n; ++d) t(d) = shift(rng);
        worst_shift = std::max(worst_shift, class_distance(TranslationClass(k),
                                                           TranslationClass(apply_map(k, AffineMap{Matrix::Identity(n, n), t}))));
    }
    return {worst_grid <= 2e-3 && worst_shift <= 1e-8,
            "max |class_distance - grid oracle| " + fmt(worst_grid) + ", max shifted-copy distance " + fmt(worst_shift)};
}

Verdict equivariance_batteries() {
    const std::vector<ConvexBody> bodies = random_bodies(303, 20, 2);
    std::mt19937_64 rng(304);
    std::vector<AffineMap> maps;
    for (int j = 0; j < 20; ++j) maps.push_back(random_affine(rng, 2));
    const EquivarianceReport c = equivariance_report(centroid_functional(), bodies, maps, 1e-9);
    const EquivarianceReport m = equivariance_report(mvee_center(), bodies, maps, 1e-5);
    return {c.max_residual < 1e-9 && m.max_residual < 1e-5 && c.membership_ok && m.membership_ok,
            "centroid max residual " + fmt(c.max_residual) + ", mvee max residual " + fmt(m.max_residual) +
                ", membership " + (c.membership_ok && m.membership_ok ? "ok" : "violated")};
}

BlendSpec scalene_spec(const Point& x0) {
    BlendSpec spec{body_from({{0, 0}, {4, 0}, {0, 3}}), x0};
    const SuggestedRadii r = suggest_radii(spec.anchor, 0);
    spec.eps_in = r.eps_in;
    spec.eps_out = r.eps_out;
    return spec;
}

Verdict blend_construction() {
    double anchor_err = 0.0, equiv = 0.0;
    bool far_exact = true;
    for (const Point& x0 : {vec({1, 1}), vec({0.5, 2}), vec({2, 0.4})}) {
        const BlendSpec spec = scalene_spec(x0);
        const InvariantFunctional p = blend_functional(spec);
        const double diam = spec.anchor.diameter();
        anchor_err = std::max(anchor_err, (p(spec.anchor) - x0).norm() / diam);
        std::mt19937_64 rng(404);
        for (int j = 0; j < 50; ++j) {
            const Similarity s = random_similarity(rng, 2, 0.1, 10.0);
            equiv = std::max(equiv, (p(apply_map(spec.anchor, s)) - s.apply(x0)).norm() / (s.scale() * diam));
        }
    }
    const BlendFunctional blend(scalene_spec(vec({1, 1})));
    std::mt19937_64 rng(405);
    for (int k = 0; k < 10; ++k) {
        const ConvexBody far = k < 5 ? body_from({{0, 0}, {3.0 + k, 0}, {3.0 + k, 0.3}, {0, 0.3}}) : random_body(rng, 2, 12);
        const BlendEvaluation e = blend.evaluate(far);
        far_exact = far_exact && e.distance >= blend.spec().eps_out && e.point == far.centroid();
    }
    return {anchor_err <= 1e-6 && equiv <= 1e-5 && far_exact,
            "anchor err " + fmt(anchor_err) + " diam, similarity residual " + fmt(equiv) + " diam, far bodies " +
                (far_exact ? "exactly centroid" : "NOT centroid")};
}

Verdict corollary_extension() {
    const Point x0 = vec({1, 1});
    const BlendSpec spec = scalene_spec(x0);
    const InvariantFunctional p = similarity_extend(blend_unit_functional(spec));
    std::vector<Similarity> maps;
    for (double lambda : {0.1, 0.5, 1.0, 2.0, 10.0}) maps.push_back(Similarity::scaling(2, lambda));
    std::mt19937_64 rng(505);
    for (int j = 0; j < 30; ++j) maps.push_back(random_similarity(rng, 2, 0.1, 10.0));
    const EquivarianceReport r = equivariance_report(p, {spec.anchor, body_from({{0, 0}, {4, 0.05}, {0, 3}})}, maps, 1e-5);
    double anchor = 0.0;
    for (double lambda : {0.1, 1.0, 10.0}) {
        const Similarity s(lambda, Matrix::Identity(2, 2), vec({3, -1}));
        anchor = std::max(anchor, (p(apply_map(spec.anchor, s)) - s.apply(x0)).norm() / (lambda * spec.anchor.diameter()));
    }
    return {r.passed && anchor <= 1e-5,
            "battery max residual " + fmt(r.max_residual) + " (lambda diam), scaled-anchor err " + fmt(anchor)};
}

Verdict fixed_slice() {
    const SuspensionBody s = suspend(asymmetric_profile(64, 7));
    try {
        const SliceReport r = verify_fixed_slice(s, {centroid_functional(), mvee_center()}, interior_grid(s.base, 5));
        double worst = 0.0;
        for (const AnchorResult& a : r.achievability) worst = std::max(worst, a.residual);
        return {r.passed && r.group_order == 2 && r.fixed_dim == 2 && r.achievability.size() == 25,
                "order " + std::to_string(r.group_order) + ", fixed dim " + std::to_string(r.fixed_dim) +
                    ", confinement " + fmt(r.confinement_max) + ", max achievability residual " + fmt(worst) + " diam"};
    } catch (const VerificationFailure& e) {
        return {false, e.what()};
    }
}

int permutation_isometries(const ConvexBody& body) {
    const std::vector<Point> v = body.vertices();
    std::vector<int> perm(v.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i);
    int count = 0;
    do {
        bool ok = true;
        for (std::size_t i = 0; i < v.size() && ok; ++i)
            for (std::size_t j = i + 1; j < v.size() && ok; ++j)
                ok = std::abs((v[i] - v[j]).norm() - (v[perm[i]] - v[perm[j]]).norm()) < 1e-9;
        if (ok) ++count;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return count;
}

Verdict symmetry_detection() {
    bool ok = symmetry_group(unit_cube(2)).order() == 8;
    ok = ok && symmetry_group(body_from({{0, 0}, {4, 0}, {0, 3}})).order() == 1;
    std::string orders;
    for (int m = 5; m <= 8; ++m) {
        const ConvexBody poly = regular_polygon(m, 1.0, 0.1 * m);
        const std::size_t order = symmetry_group(poly).order();
        ok = ok && order == static_cast<std::size_t>(2 * m) && static_cast<int>(order) == permutation_isometries(poly);
        orders += (orders.empty() ? "" : ",") + std::to_string(order);
    }
    return {ok, "square 8, 3-4-5 triangle 1, m-gons " + orders};
}

Verdict haar_sampler() {
    HaarSampler s(2, 0);
    const int draws = 10000;
    std::vector<double> angles;
    Matrix mean = Matrix::Zero(2, 2);
    for (int k = 0; k < draws; ++k) {
        const Matrix q = s.next();
        mean += q / draws;
        double a = std::atan2(q(1, 0), q(0, 0));
        if (a < 0) a += 2.0 * std::numbers::pi;
        angles.push_back(a);
    }
    std::sort(angles.begin(), angles.end());
    double ks = 0.0;
    for (std::size_t i = 0; i < angles.size(); ++i) {
        const double f = angles[i] / (2.0 * std::numbers::pi);
        ks = std::max({ks, (i + 1.0) / angles.size() - f, f - static_cast<double>(i) / angles.size()});
    }
    const double m = mean.cwiseAbs().maxCoeff();
    return {ks < 0.02 && m < 3.0 / std::sqrt(draws), "KS " + fmt(ks) + ", max |E[Q]| " + fmt(m)};
}

Verdict cli_determinism() {
    const fs::path dir = fs::temp_directory_path() / ("invpt_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(dir / "bodies");
    std::ofstream(dir / "bodies" / "a.json") << R"({"dim":2,"vertices":[[0,0],[4,0],[0,3]]})";
    std::ofstream(dir / "bodies" / "b.json") << R"({"dim":2,"vertices":[[0,0],[2,0.3],[1.5,2],[-0.4,1.2]]})";
    std::ofstream(dir / "spec.json") << R"({"anchor":{"dim":2,"vertices":[[0,0],[4,0],[0,3]]},"target":[1,1]})";
    const std::string bin = INVPT_CLI_PATH;
    const std::string d = dir.string();
    const std::vector<std::string> commands{
        "compute --functional mvee --body " + d + "/bodies/b.json",
        "test-equivariance --functional mvee --bodies " + d + "/bodies --maps 30 --seed 3",
        "test-equivariance --functional blend --spec " + d + "/spec.json --maps 10 --seed 4",
        "blend --spec " + d + "/spec.json --body " + d + "/bodies/b.json --mode soft --seed 2",
        "suspend --profile 40 --seed 9",
        "verify-suspension --profile 64 --seed 7 --grid 5",
    };
    bool ok = true;
    int compared = 0;
    for (std::size_t i = 0; i < commands.size(); ++i) {
        std::string outputs[2];
        for (int rep = 0; rep < 2; ++rep) {
            const std::string file = d + "/out_" + std::to_string(i) + "_" + std::to_string(rep);
            const int status = std::system((bin + " " + commands[i] + " --out " + file + " > " + file + ".stdout 2>&1").c_str());
            ok = ok && WIFEXITED(status) && WEXITSTATUS(status) == 0;
            std::ifstream a(file, std::ios::binary), b(file + ".stdout", std::ios::binary);
            std::stringstream ss;
            ss << a.rdbuf() << "\n--\n" << b.rdbuf();
            outputs[rep] = ss.str();
        }
        ok = ok && outputs[0] == outputs[1] && outputs[0].size() > 8;
        ++compared;
    }
    fs::remove_all(dir);
    return {ok, std::to_string(compared) + " commands run twice, outputs " + (ok ? "byte-identical" : "DIFFER")};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
        {"geometry oracles", geometry_oracles},
        {"metric", metric},
        {"equivariance batteries", equivariance_batteries},
        {"blend construction", blend_construction},
        {"volume-normalized extension", corollary_extension},
        {"fixed slice of the suspension", fixed_slice},
        {"symmetry detection", symmetry_detection},
        {"Haar sampler", haar_sampler},
        {"CLI determinism", cli_determinism},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Verdict v;
        try {
            v = criteria[i].second();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        if (!v.pass) ++failed;
        std::cout << (v.pass ? "[PASS] " : "[FAIL] ") << "criterion " << (i + 1) << ": " << criteria[i].first << " ("
                  << v.detail << ")" << std::endl;
    }
    std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria passed"
              << std::endl;
    return failed == 0 ? 0 : 1;
}
