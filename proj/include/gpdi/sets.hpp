// Compact sets as finite point clouds, the Hausdorff metric, support
// functions, epsilon-net pruning and convex hulls. This is the substrate the
// propagation, averaging and certification modules are built on: values of
// set-valued maps are merely compact, so the representation stays a plain
// cloud and convexity is recovered where needed via support sampling or
// nearest-point projection.
#pragma once

#include <optional>
#include <span>
#include <vector>

#include "gpdi/core.hpp"

namespace gpdi {

// Nonempty finite subset of R^dim. `resolution` is the epsilon-net spacing
// actually achieved (0 for exact finite sets).
struct CompactSet {
    int dim = 0;
    std::vector<Vec> points;
    double resolution = 0.0;

    static CompactSet from_points(std::vector<Vec> pts, double resolution = 0.0);
    static CompactSet singleton(Vec x);
    // Uniform samples of the interval [lo, hi] in R^1 at the given spacing.
    static CompactSet interval(double lo, double hi, double spacing);

    void validate() const;
    Vec centroid() const;
};

// Symmetric set of unit directions used for support-function sampling:
// 2*dim axis directions plus an angular grid (ring in R^2, symmetrized
// Fibonacci sphere in R^3, mirrored low-discrepancy samples above).
struct DirectionGrid {
    int dim = 0;
    std::vector<Vec> dirs;

    std::size_t count() const { return dirs.size(); }

    // count = 0 picks the per-dimension default (2 in R^1, 32+4 in R^2,
    // 128+6 in R^3, 64+2*dim otherwise).
    static DirectionGrid make(int dim, std::size_t count = 0);

    void validate() const;
};

// Exact Hausdorff distance between the stored clouds, brute force.
double hausdorff(const CompactSet& a, const CompactSet& b);

// Directed distance sup_{a in A} inf_{b in B} |a-b|.
double directed_hausdorff(const CompactSet& a, const CompactSet& b);

// max_{a in A} <a, d>; d must be unit length within 1e-9.
double support(const CompactSet& a, const Vec& d);

// The point attaining support(a, d); ties resolved by first occurrence in the
// stored order.
const Vec& support_point(const CompactSet& a, const Vec& d);

// Greedy epsilon-net after a canonical lexicographic sort: keeps a subset of
// the input, every dropped point within h of a kept one, kept points pairwise
// at least h apart.
CompactSet prune(const CompactSet& a, double h);

// Same net on a raw point list (used by the propagators on joint clouds).
std::vector<Vec> prune_points(std::vector<Vec> pts, double h);

// Outer approximation of A + r*B using the direction grid; the input points
// are retained so the result contains A.
CompactSet minkowski_ball(const CompactSet& a, double r, const DirectionGrid& grid);

struct HullResult {
    CompactSet set;
    bool exact = true;  // false when only a support-sampled outer polytope
};

// Extreme points of conv(A); exact for dim <= 3, support-sampled outer
// polytope above that.
HullResult convex_hull(const CompactSet& a, const DirectionGrid* grid = nullptr);

// Nearest point of conv(points) to z (Wolfe's min-norm-point active set
// method; terminates on a first-order optimality certificate).
Vec nearest_point_in_hull(std::span<const Vec> points, const Vec& z);

double dist_to_hull(std::span<const Vec> points, const Vec& z);

// Signed distance of z to the boundary of conv(points): positive inside,
// negative outside. Exact in R^1/R^2; inner distance estimated over a
// direction grid in higher dimensions.
double signed_dist_to_hull_boundary(std::span<const Vec> points, const Vec& z,
                                    const DirectionGrid* grid = nullptr);

}  // namespace gpdi
