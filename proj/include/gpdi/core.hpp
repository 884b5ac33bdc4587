// Small-vector numerics, deterministic RNG, and axis-aligned boxes shared by
// every module. Points are dynamically sized (dims 1..3 in practice) so a
// plain std::vector<double> keeps the hot loops simple and allocation-cheap
// enough at the set sizes this library works with.
#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace gpdi {

using Vec = std::vector<double>;

inline double dot(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm_sq(const Vec& a) { return dot(a, a); }
inline double norm(const Vec& a) { return std::sqrt(norm_sq(a)); }

inline double dist_sq(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

inline double dist(const Vec& a, const Vec& b) { return std::sqrt(dist_sq(a, b)); }

inline Vec add(Vec a, const Vec& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
}

inline Vec sub(Vec a, const Vec& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
    return a;
}

inline Vec scaled(Vec a, double s) {
    for (double& x : a) x *= s;
    return a;
}

// y += s * x
inline void axpy(Vec& y, double s, const Vec& x) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += s * x[i];
}

inline bool all_finite(const Vec& a) {
    for (double x : a)
        if (!std::isfinite(x)) return false;
    return true;
}

inline Vec normalized(Vec a) {
    const double n = norm(a);
    if (n == 0.0) throw std::invalid_argument("cannot normalize zero vector");
    return scaled(std::move(a), 1.0 / n);
}

// Lexicographic order; the canonical ordering used before pruning so set
// operations are reproducible bit-for-bit.
inline bool lex_less(const Vec& a, const Vec& b) {
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
        if (a[i] < b[i]) return true;
        if (a[i] > b[i]) return false;
    }
    return a.size() < b.size();
}

// Pairwise tree sum: deterministic and with O(log n) roundoff growth, so the
// same total appears regardless of how callers might chunk the work.
inline double pairwise_sum(std::vector<double> xs) {
    if (xs.empty()) return 0.0;
    std::size_t n = xs.size();
    while (n > 1) {
        const std::size_t half = n / 2;
        for (std::size_t i = 0; i < half; ++i) xs[i] = xs[2 * i] + xs[2 * i + 1];
        if (n % 2 == 1) {
            xs[half] = xs[n - 1];
            n = half + 1;
        } else {
            n = half;
        }
    }
    return xs[0];
}

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    double width() const { return hi - lo; }
    double mid() const { return 0.5 * (lo + hi); }
    bool contains(double x) const { return lo <= x && x <= hi; }
    Interval hull(double x) const { return {std::min(lo, x), std::max(hi, x)}; }
};

// Axis-aligned box, used for sampling domains and declaring where a field is
// defined.
struct Box {
    Vec lo;
    Vec hi;

    int dim() const { return static_cast<int>(lo.size()); }

    bool contains(const Vec& x, double slack = 0.0) const {
        for (std::size_t i = 0; i < lo.size(); ++i)
            if (x[i] < lo[i] - slack || x[i] > hi[i] + slack) return false;
        return true;
    }

    double volume() const {
        double v = 1.0;
        for (std::size_t i = 0; i < lo.size(); ++i) v *= (hi[i] - lo[i]);
        return v;
    }
};

// Deterministic splitmix64 generator. The standard <random> distributions are
// implementation-defined, so all sampling goes through this to keep outputs
// byte-identical across toolchains.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform on [0, 1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    std::size_t index(std::size_t n) {
        if (n == 0) throw std::invalid_argument("Rng::index on empty range");
        std::size_t i = static_cast<std::size_t>(uniform() * static_cast<double>(n));
        return i < n ? i : n - 1;
    }

    double normal() {
        // Box-Muller without caching; one value per call keeps splits simple.
        double u1 = uniform();
        while (u1 <= 1e-300) u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    }

    Vec point_in_box(const Box& box) {
        Vec x(box.lo.size());
        for (std::size_t i = 0; i < x.size(); ++i) x[i] = uniform(box.lo[i], box.hi[i]);
        return x;
    }

    Vec unit_vector(int dim) {
        Vec v(dim);
        double n = 0.0;
        while (n < 1e-12) {
            for (double& c : v) c = normal();
            n = norm(v);
        }
        return scaled(std::move(v), 1.0 / n);
    }

    // Independent child stream; all randomness in a run derives from one root
    // seed split this way.
    Rng split(std::uint64_t stream) const {
        std::uint64_t z = state_ ^ (0xD6E8FEB86659FD93ULL * (stream + 1));
        z = (z ^ (z >> 32)) * 0xD6E8FEB86659FD93ULL;
        return Rng(z ^ (z >> 32));
    }

  private:
    std::uint64_t state_;
};

constexpr double kTwoPi = 6.283185307179586476925286766559;

}  // namespace gpdi
