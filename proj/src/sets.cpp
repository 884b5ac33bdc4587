#include "gpdi/sets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gpdi {

namespace {

void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

CompactSet CompactSet::from_points(std::vector<Vec> pts, double resolution) {
    CompactSet s;
    require(!pts.empty(), "CompactSet: points must be nonempty");
    s.dim = static_cast<int>(pts.front().size());
    s.points = std::move(pts);
    s.resolution = resolution;
    s.validate();
    return s;
}

CompactSet CompactSet::singleton(Vec x) { return from_points({std::move(x)}, 0.0); }

CompactSet CompactSet::interval(double lo, double hi, double spacing) {
    require(hi >= lo, "CompactSet::interval: hi < lo");
    require(spacing > 0.0, "CompactSet::interval: spacing must be positive");
    std::vector<Vec> pts;
    const int n = static_cast<int>(std::ceil((hi - lo) / spacing));
    pts.reserve(n + 1);
    for (int i = 0; i < n; ++i) pts.push_back({lo + i * spacing});
    pts.push_back({hi});
    return from_points(std::move(pts), spacing);
}

void CompactSet::validate() const {
    require(dim >= 1, "CompactSet: dim must be positive");
    require(!points.empty(), "CompactSet: points must be nonempty");
    require(resolution >= 0.0, "CompactSet: resolution must be nonnegative");
    for (const Vec& p : points) {
        require(static_cast<int>(p.size()) == dim, "CompactSet: point dimension mismatch");
        require(all_finite(p), "CompactSet: non-finite coordinate");
    }
}

Vec CompactSet::centroid() const {
    Vec c(dim, 0.0);
    for (const Vec& p : points) axpy(c, 1.0, p);
    return scaled(std::move(c), 1.0 / static_cast<double>(points.size()));
}

DirectionGrid DirectionGrid::make(int dim, std::size_t count) {
    require(dim >= 1, "DirectionGrid: dim must be positive");
    DirectionGrid g;
    g.dim = dim;

    // Axis directions first.
    for (int i = 0; i < dim; ++i) {
        Vec d(dim, 0.0);
        d[i] = 1.0;
        g.dirs.push_back(d);
        d[i] = -1.0;
        g.dirs.push_back(d);
    }
    if (dim == 1) return g;

    if (count == 0) count = dim == 2 ? 32 : dim == 3 ? 128 : 64;

    if (dim == 2) {
        const std::size_t n = std::max<std::size_t>(4, count);
        for (std::size_t k = 0; k < n; ++k) {
            const double th = kTwoPi * static_cast<double>(k) / static_cast<double>(n);
            g.dirs.push_back({std::cos(th), std::sin(th)});
        }
    } else if (dim == 3) {
        // Fibonacci hemisphere, mirrored to keep the grid symmetric.
        const std::size_t half = std::max<std::size_t>(4, count / 2);
        const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
        for (std::size_t k = 0; k < half; ++k) {
            const double z = (static_cast<double>(k) + 0.5) / static_cast<double>(half);
            const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
            const double th = kTwoPi * static_cast<double>(k) / golden;
            Vec d = {r * std::cos(th), r * std::sin(th), z};
            g.dirs.push_back(d);
            g.dirs.push_back(scaled(std::move(d), -1.0));
        }
    } else {
        // Mirrored pseudo-random unit vectors from a fixed stream.
        Rng rng(0x5e7d19u);
        const std::size_t half = std::max<std::size_t>(dim, count / 2);
        for (std::size_t k = 0; k < half; ++k) {
            Vec d = rng.unit_vector(dim);
            g.dirs.push_back(d);
            g.dirs.push_back(scaled(std::move(d), -1.0));
        }
    }
    return g;
}

void DirectionGrid::validate() const {
    require(dim >= 1, "DirectionGrid: dim must be positive");
    require(!dirs.empty(), "DirectionGrid: empty");
    for (const Vec& d : dirs) {
        require(static_cast<int>(d.size()) == dim, "DirectionGrid: direction dimension mismatch");
        require(std::abs(norm(d) - 1.0) <= 1e-12, "DirectionGrid: direction not unit length");
    }
}

double directed_hausdorff(const CompactSet& a, const CompactSet& b) {
    require(a.dim == b.dim, "hausdorff: dimension mismatch");
    double worst = 0.0;
    for (const Vec& p : a.points) {
        double best = std::numeric_limits<double>::infinity();
        for (const Vec& q : b.points) {
            const double d = dist_sq(p, q);
            if (d < best) best = d;
        }
        if (best > worst) worst = best;
    }
    return std::sqrt(worst);
}

double hausdorff(const CompactSet& a, const CompactSet& b) {
    return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

double support(const CompactSet& a, const Vec& d) {
    require(static_cast<int>(d.size()) == a.dim, "support: direction dimension mismatch");
    require(std::abs(norm(d) - 1.0) <= 1e-9, "support: direction must be unit length");
    double best = -std::numeric_limits<double>::infinity();
    for (const Vec& p : a.points) best = std::max(best, dot(p, d));
    return best;
}

const Vec& support_point(const CompactSet& a, const Vec& d) {
    double best = -std::numeric_limits<double>::infinity();
    const Vec* arg = &a.points.front();
    for (const Vec& p : a.points) {
        const double v = dot(p, d);
        if (v > best) {
            best = v;
            arg = &p;
        }
    }
    return *arg;
}

std::vector<Vec> prune_points(std::vector<Vec> pts, double h) {
    require(h > 0.0, "prune: h must be positive");
    std::sort(pts.begin(), pts.end(), lex_less);
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    std::vector<Vec> kept;
    kept.reserve(pts.size());
    const double h2 = h * h;
    for (const Vec& p : pts) {
        bool covered = false;
        // Scan kept points from the back: lexicographic neighbours tend to be
        // spatial neighbours, so the first-coordinate cutoff exits early.
        for (auto it = kept.rbegin(); it != kept.rend(); ++it) {
            if (p[0] - (*it)[0] > h) break;
            if (dist_sq(p, *it) <= h2) {
                covered = true;
                break;
            }
        }
        if (!covered) kept.push_back(p);
    }
    return kept;
}

CompactSet prune(const CompactSet& a, double h) {
    CompactSet out;
    out.dim = a.dim;
    out.points = prune_points(a.points, h);
    out.resolution = std::max(a.resolution, h);
    return out;
}

CompactSet minkowski_ball(const CompactSet& a, double r, const DirectionGrid& grid) {
    require(r >= 0.0, "minkowski_ball: r must be nonnegative");
    require(grid.dim == a.dim, "minkowski_ball: grid dimension mismatch");
    if (r == 0.0) return a;
    CompactSet out;
    out.dim = a.dim;
    out.resolution = a.resolution;
    out.points.reserve(a.points.size() * (grid.dirs.size() + 1));
    for (const Vec& p : a.points) {
        out.points.push_back(p);
        for (const Vec& d : grid.dirs) {
            Vec q = p;
            axpy(q, r, d);
            out.points.push_back(std::move(q));
        }
    }
    if (a.resolution > 0.0) out = prune(out, a.resolution);
    return out;
}

namespace {

// Solves the (k+1)x(k+1) KKT system for the affine min-norm point over the
// active set: [G 1; 1^T 0] [w; nu] = [0; 1], G = S^T S. Gaussian elimination
// with partial pivoting; k never exceeds dim+2 in practice.
bool affine_weights(const std::vector<Vec>& s, std::vector<double>& w) {
    const std::size_t k = s.size();
    const std::size_t n = k + 1;
    std::vector<double> m(n * n, 0.0), rhs(n, 0.0);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) m[i * n + j] = dot(s[i], s[j]);
    for (std::size_t i = 0; i < k; ++i) {
        m[i * n + k] = 1.0;
        m[k * n + i] = 1.0;
    }
    rhs[k] = 1.0;

    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        double best = std::abs(m[perm[col] * n + col]);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double v = std::abs(m[perm[r] * n + col]);
            if (v > best) {
                best = v;
                piv = r;
            }
        }
        if (best < 1e-14) return false;
        std::swap(perm[col], perm[piv]);
        const double diag = m[perm[col] * n + col];
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            const double f = m[perm[r] * n + col] / diag;
            if (f == 0.0) continue;
            for (std::size_t c = col; c < n; ++c) m[perm[r] * n + c] -= f * m[perm[col] * n + c];
            rhs[perm[r]] -= f * rhs[perm[col]];
        }
    }
    w.assign(k, 0.0);
    for (std::size_t i = 0; i < k; ++i) w[i] = rhs[perm[i]] / m[perm[i] * n + i];
    return true;
}

}  // namespace

Vec nearest_point_in_hull(std::span<const Vec> points, const Vec& z) {
    require(!points.empty(), "nearest_point_in_hull: empty point set");
    const int dim = static_cast<int>(z.size());

    // Translate so the query is the origin.
    std::vector<Vec> q;
    q.reserve(points.size());
    double scale2 = 1.0;
    for (const Vec& p : points) {
        require(static_cast<int>(p.size()) == dim, "nearest_point_in_hull: dimension mismatch");
        q.push_back(sub(p, z));
        scale2 = std::max(scale2, norm_sq(q.back()));
    }

    std::size_t start = 0;
    for (std::size_t i = 1; i < q.size(); ++i)
        if (norm_sq(q[i]) < norm_sq(q[start])) start = i;

    std::vector<std::size_t> active = {start};
    std::vector<double> lambda = {1.0};
    Vec y = q[start];

    const double tol = 1e-13 * scale2;
    const int max_major = 64 + 8 * dim;
    for (int major = 0; major < max_major; ++major) {
        // Most violated vertex.
        std::size_t j = 0;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < q.size(); ++i) {
            const double v = dot(y, q[i]);
            if (v < best) {
                best = v;
                j = i;
            }
        }
        if (best >= norm_sq(y) - tol) break;  // optimality certificate
        bool already = false;
        for (std::size_t idx : active)
            if (idx == j) already = true;
        if (already) break;  // numerical stall

        active.push_back(j);
        lambda.push_back(0.0);

        // Minor cycle: pull the affine minimizer back into the simplex.
        for (int minor = 0; minor < 64; ++minor) {
            std::vector<Vec> s;
            s.reserve(active.size());
            for (std::size_t idx : active) s.push_back(q[idx]);
            std::vector<double> w;
            if (!affine_weights(s, w)) {
                // Degenerate Gram system; drop the smallest-weight vertex.
                std::size_t drop = 0;
                for (std::size_t i = 1; i < lambda.size(); ++i)
                    if (lambda[i] < lambda[drop]) drop = i;
                active.erase(active.begin() + drop);
                lambda.erase(lambda.begin() + drop);
                continue;
            }
            bool interior = true;
            for (double wi : w)
                if (wi <= 1e-12) interior = false;
            if (interior) {
                lambda = w;
                break;
            }
            // Line search from lambda toward w stopping at the first face.
            double theta = 1.0;
            for (std::size_t i = 0; i < w.size(); ++i)
                if (w[i] <= 1e-12 && lambda[i] > w[i])
                    theta = std::min(theta, lambda[i] / (lambda[i] - w[i]));
            for (std::size_t i = 0; i < w.size(); ++i)
                lambda[i] = (1.0 - theta) * lambda[i] + theta * w[i];
            for (std::size_t i = active.size(); i-- > 0;) {
                if (lambda[i] <= 1e-12) {
                    active.erase(active.begin() + i);
                    lambda.erase(lambda.begin() + i);
                }
            }
            if (active.size() == 1) {
                lambda = {1.0};
                break;
            }
        }

        y.assign(dim, 0.0);
        for (std::size_t i = 0; i < active.size(); ++i) axpy(y, lambda[i], q[active[i]]);
    }
    return add(std::move(y), z);
}

double dist_to_hull(std::span<const Vec> points, const Vec& z) {
    return dist(nearest_point_in_hull(points, z), z);
}

namespace {

double cross2(const Vec& o, const Vec& a, const Vec& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

// Andrew monotone chain; strict turns only, so collinear interior points drop.
std::vector<Vec> hull2d(std::vector<Vec> pts) {
    std::sort(pts.begin(), pts.end(), lex_less);
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() <= 2) return pts;

    double scale = 1.0;
    for (const Vec& p : pts) scale = std::max({scale, std::abs(p[0]), std::abs(p[1])});
    const double eps = 1e-12 * scale * scale;

    std::vector<Vec> h(2 * pts.size());
    std::size_t k = 0;
    for (const Vec& p : pts) {
        while (k >= 2 && cross2(h[k - 2], h[k - 1], p) <= eps) --k;
        h[k++] = p;
    }
    const std::size_t lower = k + 1;
    for (std::size_t i = pts.size() - 1; i-- > 0;) {
        while (k >= lower && cross2(h[k - 2], h[k - 1], pts[i]) <= eps) --k;
        h[k++] = pts[i];
    }
    h.resize(k - 1);
    return h;
}

}  // namespace

HullResult convex_hull(const CompactSet& a, const DirectionGrid* grid) {
    HullResult res;
    res.set.dim = a.dim;
    res.set.resolution = a.resolution;

    if (a.dim == 1) {
        double lo = a.points.front()[0], hi = lo;
        for (const Vec& p : a.points) {
            lo = std::min(lo, p[0]);
            hi = std::max(hi, p[0]);
        }
        res.set.points.push_back({lo});
        if (hi > lo) res.set.points.push_back({hi});
        return res;
    }

    if (a.dim == 2) {
        res.set.points = hull2d(a.points);
        return res;
    }

    if (a.dim == 3) {
        // Extreme-point filter: p is a vertex of conv(A) iff it lies strictly
        // outside the hull of the remaining points.
        double scale = 1.0;
        for (const Vec& p : a.points) scale = std::max(scale, norm(p));
        const double tol = 1e-9 * scale;
        std::vector<Vec> pts = a.points;
        std::sort(pts.begin(), pts.end(), lex_less);
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
        if (pts.size() <= 2) {
            res.set.points = pts;
            return res;
        }
        std::vector<Vec> rest;
        rest.reserve(pts.size() - 1);
        for (std::size_t i = 0; i < pts.size(); ++i) {
            rest.clear();
            for (std::size_t j = 0; j < pts.size(); ++j)
                if (j != i) rest.push_back(pts[j]);
            if (dist_to_hull(rest, pts[i]) > tol) res.set.points.push_back(pts[i]);
        }
        if (res.set.points.empty()) res.set.points.push_back(pts.front());
        return res;
    }

    // Outer support-sampled polytope in higher dimensions.
    DirectionGrid fallback;
    if (grid == nullptr) fallback = DirectionGrid::make(a.dim);
    const DirectionGrid& g = grid ? *grid : fallback;
    require(g.dim == a.dim, "convex_hull: grid dimension mismatch");
    for (const Vec& d : g.dirs) res.set.points.push_back(support_point(a, d));
    std::sort(res.set.points.begin(), res.set.points.end(), lex_less);
    res.set.points.erase(std::unique(res.set.points.begin(), res.set.points.end()),
                         res.set.points.end());
    res.exact = false;
    return res;
}

double signed_dist_to_hull_boundary(std::span<const Vec> points, const Vec& z,
                                    const DirectionGrid* grid) {
    const int dim = static_cast<int>(z.size());
    const double outside = dist_to_hull(points, z);
    if (outside > 1e-12) return -outside;

    if (dim == 1) {
        double lo = points.front()[0], hi = lo;
        for (const Vec& p : points) {
            lo = std::min(lo, p[0]);
            hi = std::max(hi, p[0]);
        }
        return std::min(z[0] - lo, hi - z[0]);
    }
    if (dim == 2) {
        std::vector<Vec> h = hull2d({points.begin(), points.end()});
        if (h.size() == 1) return -dist(h.front(), z);
        if (h.size() == 2) {
            // Degenerate hull: distance to the segment, negative outside it.
            return -dist(nearest_point_in_hull(h, z), z);
        }
        double inner = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < h.size(); ++i) {
            const Vec& a = h[i];
            const Vec& b = h[(i + 1) % h.size()];
            Vec n = {b[1] - a[1], -(b[0] - a[0])};  // outward for CCW chain
            const double len = norm(n);
            if (len < 1e-300) continue;
            inner = std::min(inner, -((z[0] - a[0]) * n[0] + (z[1] - a[1]) * n[1]) / len);
        }
        return inner;
    }

    DirectionGrid fallback;
    if (grid == nullptr) fallback = DirectionGrid::make(dim);
    const DirectionGrid& g = grid ? *grid : fallback;
    CompactSet cloud;
    cloud.dim = dim;
    cloud.points.assign(points.begin(), points.end());
    double inner = std::numeric_limits<double>::infinity();
    for (const Vec& d : g.dirs) inner = std::min(inner, support(cloud, d) - dot(z, d));
    return inner;
}

}  // namespace gpdi
