#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "gpdi/sets.hpp"

using namespace gpdi;

namespace {

CompactSet random_cloud(Rng& rng, int dim, std::size_t n, double span = 2.0) {
    std::vector<Vec> pts;
    pts.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        Vec p(dim);
        for (double& c : p) c = rng.uniform(-span, span);
        pts.push_back(std::move(p));
    }
    return CompactSet::from_points(std::move(pts));
}

// O(n^3) half-plane hull oracle in R^2: p is a hull vertex iff some line
// through p and another point has every remaining point strictly on one side.
std::vector<Vec> brute_hull_vertices_2d(const std::vector<Vec>& pts) {
    auto cross = [](const Vec& o, const Vec& a, const Vec& b) {
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
    };
    std::vector<Vec> verts;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        bool extreme = false;
        for (std::size_t j = 0; j < pts.size() && !extreme; ++j) {
            if (j == i) continue;
            bool any_pos = false, any_neg = false;
            for (std::size_t k = 0; k < pts.size(); ++k) {
                if (k == i || k == j) continue;
                const double c = cross(pts[i], pts[j], pts[k]);
                if (c > 0) any_pos = true;
                if (c < 0) any_neg = true;
            }
            if (!(any_pos && any_neg)) extreme = true;
        }
        if (extreme) verts.push_back(pts[i]);
    }
    std::sort(verts.begin(), verts.end(), lex_less);
    return verts;
}

}  // namespace

TEST_CASE("hausdorff basics") {
    auto a = CompactSet::singleton({0.0});
    CHECK(hausdorff(a, a) == 0.0);

    auto b = CompactSet::from_points({{3.0}, {5.0}});
    CHECK(hausdorff(a, b) == doctest::Approx(5.0));
    CHECK(hausdorff(b, a) == doctest::Approx(5.0));

    auto i1 = CompactSet::interval(0.0, 1.0, 0.01);
    auto i2 = CompactSet::interval(2.0, 4.0, 0.01);
    CHECK(hausdorff(i1, i2) == doctest::Approx(3.0).epsilon(0.011));

    auto c = CompactSet::singleton({0.0, 0.0});
    CHECK_THROWS_AS((void)hausdorff(a, c), std::invalid_argument);
}

TEST_CASE("hausdorff metric axioms on random triples") {
    Rng rng(42);
    for (int trial = 0; trial < 1000; ++trial) {
        auto a = random_cloud(rng, 2, 1 + rng.index(12));
        auto b = random_cloud(rng, 2, 1 + rng.index(12));
        auto c = random_cloud(rng, 2, 1 + rng.index(12));
        const double ab = hausdorff(a, b);
        const double ba = hausdorff(b, a);
        const double ac = hausdorff(a, c);
        const double cb = hausdorff(c, b);
        CHECK(ab == ba);
        CHECK(ab <= ac + cb + 1e-12);
        CHECK(hausdorff(a, a) == 0.0);
    }
}

TEST_CASE("minkowski_ball") {
    auto grid1 = DirectionGrid::make(1);
    auto a = CompactSet::singleton({0.0});

    auto same = minkowski_ball(a, 0.0, grid1);
    CHECK(hausdorff(same, a) == 0.0);

    auto inflated = minkowski_ball(a, 1.0, grid1);
    std::vector<Vec> expect = {{-1.0}, {0.0}, {1.0}};
    CHECK(hausdorff(inflated, CompactSet::from_points(expect)) == doctest::Approx(0.0));

    // Uniform inflation: d_H(A + rB, A) = r within grid error.
    Rng rng(7);
    auto grid2 = DirectionGrid::make(2);
    for (double r : {0.1, 0.5, 1.3, 2.0}) {
        auto cloud = random_cloud(rng, 2, 8);
        const double d = hausdorff(minkowski_ball(cloud, r, grid2), cloud);
        // Worst-case angular gap of the 32-direction ring.
        const double grid_err = r * (1.0 - std::cos(kTwoPi / 64.0)) + 1e-12;
        CHECK(d <= r + 1e-12);
        CHECK(d >= r - grid_err - 1e-12);
    }
}

TEST_CASE("support against exhaustive scan") {
    auto origin = CompactSet::singleton({0.0, 0.0});
    auto grid = DirectionGrid::make(2);
    for (const Vec& d : grid.dirs) CHECK(support(origin, d) == 0.0);

    auto square = CompactSet::from_points({{1, 1}, {1, -1}, {-1, 1}, {-1, -1}});
    CHECK(support(square, {1.0, 0.0}) == doctest::Approx(1.0));

    Rng rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        auto cloud = random_cloud(rng, 3, 20);
        Vec d = rng.unit_vector(3);
        double brute = -1e300;
        for (const Vec& p : cloud.points) brute = std::max(brute, dot(p, d));
        CHECK(support(cloud, d) == doctest::Approx(brute));
    }

    CHECK_THROWS_AS((void)support(square, {2.0, 0.0}), std::invalid_argument);
}

TEST_CASE("prune") {
    auto a = CompactSet::from_points({{0.0}, {0.001}, {1.0}});
    auto p = prune(a, 0.01);
    CHECK(p.points.size() == 2);
    CHECK(p.points[0][0] == 0.0);
    CHECK(p.points[1][0] == 1.0);

    // Gap larger than h: unchanged.
    auto b = CompactSet::from_points({{0.0}, {0.5}, {1.0}});
    CHECK(prune(b, 0.1).points.size() == 3);

    Rng rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        auto cloud = random_cloud(rng, 2, 60);
        const double h = rng.uniform(0.05, 0.6);
        auto once = prune(cloud, h);
        auto twice = prune(once, h);
        CHECK(once.points.size() == twice.points.size());  // idempotent
        for (std::size_t i = 0; i < once.points.size(); ++i)
            CHECK(dist(once.points[i], twice.points[i]) == 0.0);
        // Every dropped point within h of a kept point.
        CHECK(directed_hausdorff(cloud, once) <= h + 1e-12);
        // Kept points pairwise separated by more than h (hence > h/2).
        for (std::size_t i = 0; i < once.points.size(); ++i)
            for (std::size_t j = i + 1; j < once.points.size(); ++j)
                CHECK(dist(once.points[i], once.points[j]) > h);
    }
}

TEST_CASE("prune size bounded by covering number") {
    // R^1: covering number of [lo, hi] by radius-h/2 balls is ceil(len/h).
    Rng rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        auto cloud = random_cloud(rng, 1, 40);
        double lo = cloud.points[0][0], hi = lo;
        for (const Vec& p : cloud.points) {
            lo = std::min(lo, p[0]);
            hi = std::max(hi, p[0]);
        }
        const double h = rng.uniform(0.1, 1.0);
        const std::size_t covering =
            static_cast<std::size_t>(std::ceil((hi - lo) / h)) + 1;
        CHECK(prune(cloud, h).points.size() <= covering);
    }

    // R^2: brute-force grid covering of the bounding box of conv(A); each
    // radius-h/2 ball covers a grid cell of side h/sqrt(2).
    for (int trial = 0; trial < 10; ++trial) {
        auto cloud = random_cloud(rng, 2, 80);
        double lo0 = 1e300, hi0 = -1e300, lo1 = 1e300, hi1 = -1e300;
        for (const Vec& p : cloud.points) {
            lo0 = std::min(lo0, p[0]);
            hi0 = std::max(hi0, p[0]);
            lo1 = std::min(lo1, p[1]);
            hi1 = std::max(hi1, p[1]);
        }
        const double h = rng.uniform(0.3, 1.0);
        const double cell = h / std::sqrt(2.0);
        const std::size_t covering =
            (static_cast<std::size_t>(std::floor((hi0 - lo0) / cell)) + 1) *
            (static_cast<std::size_t>(std::floor((hi1 - lo1) / cell)) + 1);
        CHECK(prune(cloud, h).points.size() <= covering);
    }
}

TEST_CASE("convex hull 2d") {
    auto collinear = CompactSet::from_points({{0, 0}, {1, 1}, {2, 2}, {3, 3}});
    auto h = convex_hull(collinear);
    CHECK(h.exact);
    REQUIRE(h.set.points.size() == 2);
    CHECK(h.set.points[0][0] == 0.0);
    CHECK(h.set.points[1][0] == 3.0);

    auto square = CompactSet::from_points({{1, 1}, {1, -1}, {-1, 1}, {-1, -1}});
    auto hs = convex_hull(square);
    CHECK(hs.set.points.size() == 4);
    CHECK(hausdorff(hs.set, square) == doctest::Approx(0.0));

    Rng rng(17);
    for (int trial = 0; trial < 25; ++trial) {
        auto cloud = random_cloud(rng, 2, 25);
        auto mine = convex_hull(cloud);
        auto brute = brute_hull_vertices_2d(cloud.points);
        auto sorted = mine.set.points;
        std::sort(sorted.begin(), sorted.end(), lex_less);
        REQUIRE(sorted.size() == brute.size());
        for (std::size_t i = 0; i < sorted.size(); ++i)
            CHECK(dist(sorted[i], brute[i]) == doctest::Approx(0.0));
    }
}

TEST_CASE("convex hull 1d and 3d") {
    auto line = CompactSet::from_points({{0.2}, {-1.0}, {0.9}, {0.4}});
    auto h1 = convex_hull(line);
    REQUIRE(h1.set.points.size() == 2);
    CHECK(h1.set.points[0][0] == -1.0);
    CHECK(h1.set.points[1][0] == 0.9);

    // Octahedron vertices plus interior and face points: only vertices remain.
    std::vector<Vec> pts = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
    std::vector<Vec> extra = {{0, 0, 0}, {0.3, 0.3, 0.3}, {0.5, 0.5, 0.0}};
    auto all = pts;
    all.insert(all.end(), extra.begin(), extra.end());
    auto h3 = convex_hull(CompactSet::from_points(all));
    CHECK(h3.exact);
    CHECK(h3.set.points.size() == 6);
}

TEST_CASE("support sublinear over hull membership") {
    // support(A, normalize(d1+d2)) * |d1+d2| <= support(A,d1) + support(A,d2).
    Rng rng(23);
    for (int trial = 0; trial < 50; ++trial) {
        auto cloud = random_cloud(rng, 2, 15);
        Vec d1 = rng.unit_vector(2);
        Vec d2 = rng.unit_vector(2);
        Vec sum = add(d1, d2);
        const double len = norm(sum);
        if (len < 1e-6) continue;
        const double lhs = support(cloud, scaled(sum, 1.0 / len)) * len;
        CHECK(lhs <= support(cloud, d1) + support(cloud, d2) + 1e-9);
    }
}

TEST_CASE("nearest point in hull") {
    // Projection onto a segment.
    std::vector<Vec> seg = {{0.0, 0.0}, {1.0, 0.0}};
    CHECK(dist(nearest_point_in_hull(seg, {0.5, 1.0}), Vec{0.5, 0.0}) == doctest::Approx(0.0));
    CHECK(dist(nearest_point_in_hull(seg, {2.0, 0.0}), Vec{1.0, 0.0}) == doctest::Approx(0.0));

    // Projection onto a triangle: interior point unchanged.
    std::vector<Vec> tri = {{0, 0}, {2, 0}, {0, 2}};
    CHECK(dist_to_hull(tri, {0.5, 0.5}) == doctest::Approx(0.0));
    CHECK(dist_to_hull(tri, {2.0, 2.0}) == doctest::Approx(std::sqrt(2.0)));

    // Optimality certificate on random instances: y is the projection of z
    // iff <z - y, q - y> <= 0 for all vertices q.
    Rng rng(29);
    for (int trial = 0; trial < 200; ++trial) {
        const int dim = 1 + static_cast<int>(rng.index(3));
        auto cloud = random_cloud(rng, dim, 1 + rng.index(10));
        Vec z(dim);
        for (double& c : z) c = rng.uniform(-3.0, 3.0);
        Vec y = nearest_point_in_hull(cloud.points, z);
        Vec g = sub(z, y);
        for (const Vec& q : cloud.points) CHECK(dot(g, sub(q, y)) <= 1e-7);
    }
}

TEST_CASE("signed distance to hull boundary") {
    std::vector<Vec> square = {{1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
    CHECK(signed_dist_to_hull_boundary(square, {0.0, 0.0}) == doctest::Approx(1.0));
    CHECK(signed_dist_to_hull_boundary(square, {0.5, 0.0}) == doctest::Approx(0.5));
    CHECK(signed_dist_to_hull_boundary(square, {2.0, 0.0}) == doctest::Approx(-1.0));

    std::vector<Vec> iv = {{-1.0}, {1.0}};
    CHECK(signed_dist_to_hull_boundary(iv, {0.25}) == doctest::Approx(0.75));
    CHECK(signed_dist_to_hull_boundary(iv, {1.5}) == doctest::Approx(-0.5));
}

TEST_CASE("direction grid invariants") {
    for (int dim : {1, 2, 3, 5}) {
        auto g = DirectionGrid::make(dim);
        g.validate();
        // Symmetry: every direction has its negation present.
        for (const Vec& d : g.dirs) {
            bool found = false;
            for (const Vec& e : g.dirs)
                if (dist(scaled(Vec(d), -1.0), e) < 1e-12) found = true;
            CHECK(found);
        }
    }
}
