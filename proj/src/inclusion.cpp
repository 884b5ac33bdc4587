#include "gpdi/inclusion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gpdi {

void VertexSample::validate(int dim) const {
    if (vertices.empty()) throw std::invalid_argument("VertexSample: empty vertex list");
    for (const Vec& v : vertices) {
        if (static_cast<int>(v.size()) != dim)
            throw std::invalid_argument("VertexSample: vertex dimension mismatch");
        if (!all_finite(v)) throw std::invalid_argument("VertexSample: non-finite vertex");
    }
}

PhaseVelocity PhaseVelocity::constant(double lo, double hi) {
    if (!(0.0 < lo && lo <= hi))
        throw std::invalid_argument("PhaseVelocity::constant: need 0 < lo <= hi");
    PhaseVelocity w;
    w.eval = [lo, hi](const Vec&) { return Interval{lo, hi}; };
    w.m = lo;
    w.M = hi;
    w.lipschitz = 0.0;
    return w;
}

SetValuedField AveragedField::as_field(const SetValuedField& source) const {
    SetValuedField f = source;
    auto ev = eval;
    f.eval = [ev](double, const Vec& x) { return ev(x); };
    return f;
}

VertexSample average(const SetValuedField& field, const Vec& x, int n_phi,
                     const DirectionGrid& grid) {
    if (n_phi < 8) throw std::invalid_argument("average: n_phi must be at least 8");
    if (grid.dim != field.dim) throw std::invalid_argument("average: grid dimension mismatch");

    // Cache the phi samples once; they are shared by every direction.
    std::vector<VertexSample> samples;
    samples.reserve(n_phi);
    for (int k = 0; k < n_phi; ++k) {
        const double phi = kTwoPi * static_cast<double>(k) / static_cast<double>(n_phi);
        VertexSample s = field(phi, x);
        s.validate(field.dim);
        if (!s.convex)
            throw std::invalid_argument("average: field values must be flagged convex");
        samples.push_back(std::move(s));
    }

    // Supporting point of the averaged set in direction d is the phi-mean of
    // per-sample supporting points (support of the set integral equals the
    // integral of supports for convex values).
    VertexSample out;
    out.convex = true;
    std::vector<double> acc(n_phi);
    for (const Vec& d : grid.dirs) {
        std::vector<std::size_t> arg(n_phi);
        for (int k = 0; k < n_phi; ++k) {
            const std::vector<Vec>& verts = samples[k].vertices;
            double best = -std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < verts.size(); ++i) {
                const double v = dot(verts[i], d);
                if (v > best) {
                    best = v;
                    arg[k] = i;
                }
            }
        }
        Vec vertex(field.dim, 0.0);
        for (int c = 0; c < field.dim; ++c) {
            for (int k = 0; k < n_phi; ++k) acc[k] = samples[k].vertices[arg[k]][c];
            vertex[c] = pairwise_sum(acc) / static_cast<double>(n_phi);
        }
        out.vertices.push_back(std::move(vertex));
    }

    std::sort(out.vertices.begin(), out.vertices.end(), lex_less);
    out.vertices.erase(std::unique(out.vertices.begin(), out.vertices.end()),
                       out.vertices.end());
    return out;
}

AveragedField make_averaged(const SetValuedField& field, int n_phi, const DirectionGrid& grid) {
    AveragedField avg;
    avg.dim = field.dim;
    avg.n_phi = n_phi;
    avg.grid_count = grid.count();
    SetValuedField captured = field;
    avg.eval = [captured, n_phi, grid](const Vec& x) {
        return average(captured, x, n_phi, grid);
    };
    return avg;
}

double averaging_error_constant(double m, double M, double M_X, double lambda,
                                double lambda_omega, double L) {
    if (!(m > 0 && M > 0 && M_X > 0 && lambda > 0 && lambda_omega > 0 && L > 0))
        throw std::invalid_argument("averaging_error_constant: all arguments must be positive");
    const double pi = kTwoPi / 2.0;
    const double expo = lambda * M * L / m;
    if (expo > 700.0) return std::numeric_limits<double>::infinity();
    return (std::exp(expo) - 1.0) *
               (4.0 * pi * M_X / m + 2.0 * pi * lambda_omega * M_X * M_X / lambda) +
           8.0 * M_X * pi / m;
}

double estimate_lipschitz(const SetValuedField& field, const Box& domain, int n_samples,
                          std::uint64_t seed) {
    if (n_samples < 2) throw std::invalid_argument("estimate_lipschitz: need n_samples >= 2");
    if (domain.dim() != field.dim)
        throw std::invalid_argument("estimate_lipschitz: domain dimension mismatch");
    if (domain.volume() == 0.0)
        throw std::invalid_argument("estimate_lipschitz: degenerate (zero volume) domain");

    Rng rng(seed);
    double worst = 0.0;
    for (int i = 0; i < n_samples; ++i) {
        const double phi = rng.uniform(0.0, kTwoPi);
        const Vec x0 = rng.point_in_box(domain);
        const Vec x1 = rng.point_in_box(domain);
        const double gap = dist(x0, x1);
        if (gap < 1e-9) continue;
        const VertexSample s0 = field(phi, x0);
        const VertexSample s1 = field(phi, x1);
        const CompactSet a = CompactSet::from_points(s0.vertices);
        const CompactSet b = CompactSet::from_points(s1.vertices);
        worst = std::max(worst, hausdorff(a, b) / gap);
    }
    return worst;
}

SetValuedField make_phase_field(const SetValuedField& field, const PhaseVelocity& omega) {
    SetValuedField phi_field;
    phi_field.dim = field.dim;
    phi_field.epsilon = 1.0;
    phi_field.bound = field.epsilon * field.bound / omega.m;
    // d_H((1/w0)X(x0), (1/w1)X(x1)) <= lambda/m * d + M_X * lambda_w / m^2 * d.
    phi_field.lipschitz = field.epsilon * (field.lipschitz / omega.m +
                                           field.bound * omega.lipschitz / (omega.m * omega.m));
    phi_field.domain = field.domain;
    SetValuedField base = field;
    PhaseVelocity w = omega;
    phi_field.eval = [base, w](double phi, const Vec& x) {
        const VertexSample inner = base(phi, x);
        const Interval iv = w(x);
        const double ks[3] = {1.0 / iv.hi, 1.0 / iv.mid(), 1.0 / iv.lo};
        const int nk = (iv.hi - iv.lo) < 1e-15 ? 1 : 3;
        VertexSample out;
        out.convex = inner.convex;
        out.vertices.reserve(inner.vertices.size() * nk);
        for (int k = 0; k < nk; ++k)
            for (const Vec& v : inner.vertices)
                out.vertices.push_back(scaled(Vec(v), base.epsilon * ks[k]));
        return out;
    };
    return phi_field;
}

}  // namespace gpdi
