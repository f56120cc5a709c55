#include "doctest.h"

#include "invpt/body.hpp"
#include "invpt/metric.hpp"
#include "test_support.hpp"

using namespace invpt;
using namespace testing_support;

TEST_CASE("convex_hull drops interior points") {
    ConvexBody tri = body_from({{0, 0}, {1, 0}, {0, 1}, {0.2, 0.2}});
    CHECK(tri.num_vertices() == 3);
    CHECK(tri.facets().size() == 3);
    CHECK(same_vertex_set(tri, body_from({{0, 0}, {1, 0}, {0, 1}}), 0.0));
}

TEST_CASE("convex_hull of cube corners has six facets") {
    ConvexBody cube = unit_cube(3);
    CHECK(cube.num_vertices() == 8);
    CHECK(cube.facets().size() == 6);
    for (const Facet& f : cube.facets()) CHECK(f.vertices.size() == 4);
}

TEST_CASE("convex_hull drops face centres and edge midpoints") {
    std::vector<Point> pts = unit_cube(3).vertices();
    pts.push_back(vec({0.5, 0.5, 1.0}));
    pts.push_back(vec({0.5, 0.0, 0.0}));
    pts.push_back(vec({0.5, 0.5, 0.5}));
    ConvexBody cube = convex_hull(pts, 3);
    CHECK(cube.num_vertices() == 8);
    CHECK(cube.facets().size() == 6);
}

TEST_CASE("convex_hull of random disk points contains every input point") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    std::vector<Point> pts;
    while (pts.size() < 100) {
        Point p = vec({unif(rng), unif(rng)});
        if (p.norm() <= 1.0) pts.push_back(p);
    }
    ConvexBody hull = convex_hull(pts, 2);
    for (const Point& p : pts) {
        for (const Facet& f : hull.facets()) CHECK(f.normal.dot(p) <= f.offset + 1e-12);
    }
    // Every vertex is one of the inputs, and every facet is supporting.
    for (const Point& v : hull.vertices()) {
        bool found = std::any_of(pts.begin(), pts.end(), [&](const Point& p) { return (p - v).norm() == 0.0; });
        CHECK(found);
    }
    for (const Facet& f : hull.facets()) CHECK(f.vertices.size() >= 2);
}

TEST_CASE("convex_hull rejects flat input") {
    CHECK_THROWS_AS(body_from({{0, 0}, {1, 1}, {2, 2}}), DegenerateInput);
    CHECK_THROWS_AS(body_from({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}}), DegenerateInput);
    CHECK_THROWS_AS(body_from({{0, 0}, {1, 0}}), DegenerateInput);
}

TEST_CASE("one-dimensional bodies are segments") {
    ConvexBody seg = body_from({{3}, {-1}, {0.5}});
    CHECK(seg.num_vertices() == 2);
    CHECK(seg.volume() == doctest::Approx(4.0));
    CHECK(seg.centroid()(0) == doctest::Approx(1.0));
}

TEST_CASE("closed-form volumes and centroids") {
    ConvexBody cube = unit_cube(3);
    CHECK(std::abs(cube.volume() - 1.0) <= 1e-12);
    CHECK((cube.centroid() - vec({0.5, 0.5, 0.5})).norm() <= 1e-12);

    ConvexBody simplex = body_from({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    CHECK(std::abs(simplex.volume() - 1.0 / 6.0) <= 1e-12);
    CHECK((simplex.centroid() - vec({0.25, 0.25, 0.25})).norm() <= 1e-12);

    ConvexBody square = unit_cube(2);
    CHECK((square.centroid() - vec({0.5, 0.5})).norm() <= 1e-12);

    ConvexBody tri = body_from({{0, 0}, {1, 0}, {0, 1}});
    CHECK((tri.centroid() - vec({1.0 / 3.0, 1.0 / 3.0})).norm() <= 1e-12);
}

TEST_CASE("volume and centroid match Monte Carlo on a hexagon and a pentagon") {
    ConvexBody hex = body_from({{0, 0}, {2, -0.5}, {3.1, 0.7}, {2.6, 2.2}, {0.9, 2.8}, {-0.6, 1.3}});
    auto mc = monte_carlo_moments(hex, 1'000'000, 5);
    CHECK(std::abs(hex.volume() - mc.volume) <= 0.01 * hex.volume());

    ConvexBody pent = body_from({{0, 0}, {4, 0}, {4.5, 1}, {1, 3}, {-0.5, 1.2}});
    auto mc2 = monte_carlo_moments(pent, 1'000'000, 6);
    CHECK((pent.centroid() - mc2.centroid).norm() <= 0.01 * pent.diameter());
}

TEST_CASE("triangulation covers the body") {
    std::mt19937_64 rng(3);
    ConvexBody body = random_body(rng, 3, 30);
    double sum = 0.0;
    for (const Matrix& s : triangulate(body)) sum += simplex_volume(s);
    CHECK(sum == doctest::Approx(body.volume()).epsilon(1e-12));
}

TEST_CASE("apply_map examples") {
    ConvexBody square = unit_cube(2);
    Matrix rot(2, 2);
    rot << 0, -1, 1, 0;
    ConvexBody turned = apply_map(square, AffineMap{rot, Point::Zero(2)});
    CHECK(same_vertex_set(turned, body_from({{0, 0}, {0, 1}, {-1, 0}, {-1, 1}}), 1e-15));

    ConvexBody same = apply_map(square, AffineMap::identity(2));
    CHECK(same_vertex_set(same, square, 0.0));

    ConvexBody cube = unit_cube(3);
    Matrix diag = Eigen::Vector3d(2, 3, 4).asDiagonal();
    CHECK(apply_map(cube, AffineMap{diag, Point::Zero(3)}).volume() == doctest::Approx(24.0).epsilon(1e-12));

    CHECK_THROWS_AS(apply_map(cube, AffineMap{Matrix::Zero(3, 3), Point::Zero(3)}), SingularMap);
}

TEST_CASE("volume covariance and centroid equivariance under random affine maps") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 40; ++trial) {
        const int dim = trial % 2 == 0 ? 2 : 3;
        ConvexBody body = random_body(rng, dim, 12 + trial % 7);
        AffineMap a = random_affine(rng, dim);
        ConvexBody image = apply_map(body, a);
        CHECK(std::abs(image.volume() - std::abs(a.linear.determinant()) * body.volume()) <= 1e-9 * image.volume());
        CHECK((image.centroid() - a.apply(body.centroid())).norm() <= 1e-9 * image.diameter());
        // Mapped facets agree with the image's vertices.
        for (const Facet& f : image.facets())
            for (std::size_t v = 0; v < image.num_vertices(); ++v)
                CHECK(f.normal.dot(image.vertex(v)) <= f.offset + image.tolerance());
    }
}

TEST_CASE("support_function examples") {
    ConvexBody square = unit_cube(2);
    CHECK(support_function(square, vec({1, 0})) == 1.0);
    CHECK_THROWS_AS(support_function(square, vec({0, 0})), ZeroDirection);

    const int m = 12;
    ConvexBody disk = regular_polygon(m);
    for (int k = 0; k < 50; ++k) {
        const double a = 0.123 * k;
        const double h = support_function(disk, vec({std::cos(a), std::sin(a)}));
        CHECK(h >= std::cos(std::numbers::pi / m) - 1e-12);
        CHECK(h <= 1.0 + 1e-12);
    }

    std::mt19937_64 rng(4);
    ConvexBody body = random_body(rng, 3, 20);
    for (int k = 0; k < 20; ++k) {
        Matrix q = random_orthogonal(rng, 3);
        Point u = random_orthogonal(rng, 3).col(0);
        ConvexBody image = apply_map(body, AffineMap{q, Point::Zero(3)});
        CHECK(support_function(image, u) == doctest::Approx(support_function(body, q.transpose() * u)).epsilon(1e-12));
    }
}

TEST_CASE("every vertex attains the support function somewhere") {
    std::mt19937_64 rng(8);
    ConvexBody body = random_body(rng, 2, 25);
    const DirectionSet& dirs = DirectionSet::standard(2);
    Eigen::VectorXd h = support_profile(body, dirs);
    for (std::size_t v = 0; v < body.num_vertices(); ++v) {
        Eigen::VectorXd proj = dirs.matrix().transpose() * body.vertex(v);
        CHECK((proj.array() <= h.array() + 1e-12).all());
        // The outward normal cone of a vertex has positive angle, so some
        // sampled direction lies in it unless the cone is thinner than the
        // sampling step; check with the exact facet normals instead.
        Point cone = Point::Zero(2);
        for (const Facet& f : body.facets())
            if (std::find(f.vertices.begin(), f.vertices.end(), v) != f.vertices.end()) cone += f.normal;
        cone.normalize();
        CHECK(support_function(body, cone) == doctest::Approx(cone.dot(body.vertex(v))).epsilon(1e-12));
    }
}

TEST_CASE("contains") {
    ConvexBody square = unit_cube(2);
    CHECK(contains(square, square.centroid(), 0.0));
    CHECK_FALSE(contains(square, vec({2, 2}), 0.0));
    CHECK(contains(square, vec({1, 1}), 1e-12));
}

TEST_CASE("hausdorff_distance examples") {
    ConvexBody square = unit_cube(2);
    CHECK(hausdorff_distance(square, square) == 0.0);

    ConvexBody shifted = apply_map(square, AffineMap{Matrix::Identity(2, 2), vec({1, 0})});
    CHECK(hausdorff_distance(square, shifted) == doctest::Approx(1.0).epsilon(1e-12));

    ConvexBody big = body_from({{0, 0}, {2, 0}, {2, 2}, {0, 2}});
    const double oracle = dense_hausdorff_2d(square, big);
    CHECK(oracle == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
    CHECK(hausdorff_distance(square, big) == doctest::Approx(oracle).epsilon(1e-9));

    CHECK_THROWS_AS(hausdorff_distance(square, unit_cube(3)), DimensionMismatch);
}

TEST_CASE("hausdorff_distance approaches the dense oracle from below") {
    std::mt19937_64 rng(21);
    for (int k = 0; k < 5; ++k) {
        ConvexBody a = random_body(rng, 2, 10);
        ConvexBody b = random_body(rng, 2, 10);
        const double approx = hausdorff_distance(a, b);
        const double exact = dense_hausdorff_2d(a, b, 2000);
        CHECK(approx <= exact + 1e-6);
        CHECK(approx >= exact - 1e-3 * std::max(a.diameter(), b.diameter()));
    }
}

TEST_CASE("hausdorff metric axioms on random triples") {
    std::mt19937_64 rng(9);
    for (int k = 0; k < 10; ++k) {
        const int dim = 2 + k % 2;
        ConvexBody a = random_body(rng, dim, 10), b = random_body(rng, dim, 10), c = random_body(rng, dim, 10);
        CHECK(hausdorff_distance(a, b) == hausdorff_distance(b, a));
        CHECK(hausdorff_distance(a, c) <= hausdorff_distance(a, b) + hausdorff_distance(b, c) + 1e-6);
    }
}

TEST_CASE("class_distance examples") {
    ConvexBody square = unit_cube(2);
    TranslationClass k(square);
    CHECK(class_distance(k, k) == 0.0);

    ConvexBody far = apply_map(square, AffineMap{Matrix::Identity(2, 2), vec({40, -7})});
    CHECK(class_distance(k, TranslationClass(far)) <= 1e-8);

    // Concentric alignment is optimal; the gap is the corner offset (0.5, 0.5).
    ConvexBody big = body_from({{0, 0}, {2, 0}, {2, 2}, {0, 2}});
    const double oracle = grid_search_class_distance_2d(square, big);
    CHECK(oracle == doctest::Approx(std::sqrt(0.5)).epsilon(1e-9));
    CHECK(std::abs(class_distance(k, TranslationClass(big)) - oracle) <= 2e-3);
    CHECK(class_distance(k, TranslationClass(big)) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-9));

    CHECK_THROWS_AS(class_distance(k, TranslationClass(unit_cube(3))), DimensionMismatch);
}

TEST_CASE("class_distance agrees with the grid-search oracle on random pairs") {
    std::mt19937_64 rng(31);
    for (int k = 0; k < 3; ++k) {
        ConvexBody a = random_body(rng, 2, 8), b = random_body(rng, 2, 8);
        TranslationClass ka(a), kb(b);
        const double fast = class_distance(ka, kb);
        const double oracle = grid_search_class_distance_2d(ka.representative(), kb.representative());
        CHECK(std::abs(fast - oracle) <= 2e-3);
        CHECK(fast <= oracle + 1e-12);
    }
}

TEST_CASE("class_distance is the infimum over shifts in 3D") {
    std::mt19937_64 rng(41);
    ConvexBody a = random_body(rng, 3, 12), b = random_body(rng, 3, 12);
    TranslationClass ka(a), kb(b);
    const DirectionSet& dirs = DirectionSet::standard(3);
    ShiftFit fit = align_translation(ka.representative(), kb.representative(), dirs);
    // No nearby shift does better.
    std::uniform_real_distribution<double> jitter(-0.05, 0.05);
    for (int k = 0; k < 50; ++k) {
        Point t = fit.shift + vec({jitter(rng), jitter(rng), jitter(rng)});
        ConvexBody moved = apply_map(kb.representative(), AffineMap{Matrix::Identity(3, 3), t});
        CHECK(hausdorff_distance(ka.representative(), moved, dirs) >= fit.distance - 1e-12);
    }
}

TEST_CASE("normalize examples") {
    ConvexBody cube = unit_cube(3);
    Normalized n = normalize(cube);
    CHECK(n.body.representative().volume() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(n.body.representative().centroid().norm() <= 1e-12);
    CHECK((n.to_original.translation() - vec({0.5, 0.5, 0.5})).norm() <= 1e-12);
    CHECK(n.to_original.scale() == doctest::Approx(1.0).epsilon(1e-12));

    ConvexBody sq = body_from({{4, 4}, {6, 4}, {6, 6}, {4, 6}});
    Normalized ns = normalize(sq);
    CHECK(std::abs(std::pow(ns.to_original.scale(), 2) - sq.volume()) <= 1e-12);
    CHECK(same_vertex_set(apply_map(ns.body.representative(), ns.to_original), sq, 1e-10 * sq.diameter()));
}

TEST_CASE("normalize commutes with similarities up to the rotation") {
    std::mt19937_64 rng(51);
    ConvexBody body = random_body(rng, 2, 9);
    Normalized base = normalize(body);
    for (int k = 0; k < 100; ++k) {
        Similarity s = random_similarity(rng, 2);
        Normalized image = normalize(apply_map(body, s));
        CHECK(class_distance(image.body, base.body.transformed(s.rotation())) <= 1e-8);
        if (k % 10 == 0) {
            Similarity pure(s.scale(), Matrix::Identity(2, 2), s.translation());
            CHECK(class_distance(normalize(apply_map(body, pure)).body, base.body) <= 1e-8);
        }
    }
}

TEST_CASE("normalize is idempotent") {
    std::mt19937_64 rng(61);
    ConvexBody body = random_body(rng, 3, 15);
    Normalized once = normalize(body);
    Normalized twice = normalize(once.body.representative());
    CHECK(same_vertex_set(once.body.representative(), twice.body.representative(), 1e-12));
    CHECK(twice.to_original.scale() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(twice.to_original.translation().norm() <= 1e-12);
}
