#include "gpdi/reach.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace gpdi {

namespace {

std::string format_exit(double param, const Vec& x) {
    std::ostringstream os;
    os << "propagated point left the declared domain at param " << param << ", x = (";
    for (std::size_t i = 0; i < x.size(); ++i) os << (i ? ", " : "") << x[i];
    os << ")";
    return os.str();
}

CrossSection make_section_joint(double t, const std::vector<Vec>& joint, int dim, double h) {
    CrossSection cs;
    cs.param = t;
    cs.set.dim = dim;
    cs.set.resolution = h;
    cs.set.points.reserve(joint.size());
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (const Vec& p : joint) {
        cs.set.points.push_back(Vec(p.begin(), p.begin() + dim));
        lo = std::min(lo, p[dim]);
        hi = std::max(hi, p[dim]);
    }
    cs.phase_window = {lo, hi};
    return cs;
}

int step_count(double t0, double t_end, double dt) {
    if (dt <= 0.0) throw std::invalid_argument("propagate: step must be positive");
    if (t_end < t0) throw std::invalid_argument("propagate: end before start");
    return static_cast<int>(std::ceil((t_end - t0) / dt - 1e-9));
}

}  // namespace

DomainExit::DomainExit(double param_, Vec x_)
    : std::runtime_error(format_exit(param_, x_)), param(param_), x(std::move(x_)) {}

RfSolution RfSolution::subrange(double lo, double hi) const {
    RfSolution out;
    out.param_kind = param_kind;
    out.step = step;
    out.resolution = resolution;
    out.seed = seed;
    for (const CrossSection& cs : slices)
        if (cs.param >= lo - 1e-12 && cs.param <= hi + 1e-12) out.slices.push_back(cs);
    if (out.slices.empty()) throw std::invalid_argument("RfSolution::subrange: empty range");
    return out;
}

RfSolution propagate_time_joint(const SetValuedField& field, const PhaseVelocity& omega,
                                std::vector<Vec> joint, double t0, double t_end, double dt,
                                double h, int record_stride) {
    if (h <= 0.0) throw std::invalid_argument("propagate_time: h must be positive");
    if (record_stride < 1) throw std::invalid_argument("propagate_time: bad record stride");
    const int dim = field.dim;
    for (const Vec& p : joint)
        if (static_cast<int>(p.size()) != dim + 1)
            throw std::invalid_argument("propagate_time: joint points must be (x..., phi)");

    RfSolution out;
    out.param_kind = ParamKind::time;
    out.step = dt * record_stride;
    out.resolution = h;

    const int n = step_count(t0, t_end, dt);
    joint = prune_points(std::move(joint), h);
    out.slices.push_back(make_section_joint(t0, joint, dim, h));

    std::vector<Vec> next;
    Vec x(dim);
    for (int k = 0; k < n; ++k) {
        const double t = t0 + k * dt;
        const double step = std::min(dt, t_end - t);
        next.clear();
        for (const Vec& p : joint) {
            std::copy(p.begin(), p.begin() + dim, x.begin());
            const double phi = p[dim];
            const VertexSample vs = field(phi, x);
            const Interval w = omega(x);
            const double ws[3] = {w.lo, w.mid(), w.hi};
            const int nw = (w.hi - w.lo) < 1e-15 ? 1 : 3;
            for (const Vec& v : vs.vertices) {
                for (int iw = 0; iw < nw; ++iw) {
                    Vec q(dim + 1);
                    for (int c = 0; c < dim; ++c) q[c] = x[c] + step * field.epsilon * v[c];
                    q[dim] = phi + step * ws[iw];
                    next.push_back(std::move(q));
                }
            }
        }
        joint = prune_points(std::move(next), h);
        const double t_next = t + step;
        if (field.domain) {
            for (const Vec& p : joint) {
                std::copy(p.begin(), p.begin() + dim, x.begin());
                if (!field.domain->contains(x)) throw DomainExit(t_next, x);
            }
        }
        if ((k + 1) % record_stride == 0 || k + 1 == n)
            out.slices.push_back(make_section_joint(t_next, joint, dim, h));
    }
    out.final_points = std::move(joint);
    return out;
}

RfSolution propagate_time(const SetValuedField& field, const PhaseVelocity& omega,
                          const CompactSet& r0, double phi0, double t0, double t_end,
                          double dt, double h, int record_stride) {
    r0.validate();
    if (r0.dim != field.dim) throw std::invalid_argument("propagate_time: dimension mismatch");
    if (field.domain) {
        for (const Vec& p : r0.points)
            if (!field.domain->contains(p)) throw DomainExit(t0, p);
    }
    std::vector<Vec> joint;
    joint.reserve(r0.points.size());
    for (const Vec& p : r0.points) {
        Vec q = p;
        q.push_back(phi0);
        joint.push_back(std::move(q));
    }
    return propagate_time_joint(field, omega, std::move(joint), t0, t_end, dt, h,
                                record_stride);
}

RfSolution propagate_phase(const SetValuedField& field_phi, const CompactSet& r0, double phi0,
                           double phi_end, double dphi, double h, int record_stride) {
    r0.validate();
    if (r0.dim != field_phi.dim)
        throw std::invalid_argument("propagate_phase: dimension mismatch");
    if (h <= 0.0) throw std::invalid_argument("propagate_phase: h must be positive");
    if (record_stride < 1) throw std::invalid_argument("propagate_phase: bad record stride");

    RfSolution out;
    out.param_kind = ParamKind::phase;
    out.step = dphi * record_stride;
    out.resolution = h;

    std::vector<Vec> cloud = prune_points(r0.points, h);
    if (field_phi.domain) {
        for (const Vec& p : cloud)
            if (!field_phi.domain->contains(p)) throw DomainExit(phi0, p);
    }

    auto record = [&](double phi, const std::vector<Vec>& pts) {
        CrossSection cs;
        cs.param = phi;
        cs.set.dim = field_phi.dim;
        cs.set.resolution = h;
        cs.set.points = pts;
        cs.phase_window = {phi, phi};
        out.slices.push_back(std::move(cs));
    };
    record(phi0, cloud);

    const int n = step_count(phi0, phi_end, dphi);
    std::vector<Vec> next;
    for (int k = 0; k < n; ++k) {
        const double phi = phi0 + k * dphi;
        const double step = std::min(dphi, phi_end - phi);
        next.clear();
        for (const Vec& p : cloud) {
            const VertexSample vs = field_phi(phi, p);
            for (const Vec& v : vs.vertices) {
                Vec q = p;
                axpy(q, step * field_phi.epsilon, v);
                next.push_back(std::move(q));
            }
        }
        cloud = prune_points(std::move(next), h);
        const double phi_next = phi + step;
        if (field_phi.domain) {
            for (const Vec& p : cloud)
                if (!field_phi.domain->contains(p)) throw DomainExit(phi_next, p);
        }
        if ((k + 1) % record_stride == 0 || k + 1 == n) record(phi_next, cloud);
    }
    out.final_points = std::move(cloud);
    return out;
}

namespace {

Vec select_velocity(const std::vector<Vec>& verts, SelectionPolicy policy, Rng& rng) {
    switch (policy) {
        case SelectionPolicy::min_norm:
            // Min-norm element of the hull, not of the vertex list.
            return nearest_point_in_hull(verts, Vec(verts.front().size(), 0.0));
        case SelectionPolicy::max_norm: {
            std::size_t best = 0;
            for (std::size_t i = 1; i < verts.size(); ++i)
                if (norm_sq(verts[i]) > norm_sq(verts[best])) best = i;
            return verts[best];
        }
        default:
            return verts[rng.index(verts.size())];
    }
}

double select_omega(const Interval& w, SelectionPolicy policy, Rng& rng) {
    switch (policy) {
        case SelectionPolicy::omega_lo:
            return w.lo;
        case SelectionPolicy::omega_hi:
            return w.hi;
        default:
            return w.lo + (w.hi - w.lo) * rng.uniform();
    }
}

}  // namespace

Trajectory sample_trajectory(const SetValuedField& field, const PhaseVelocity& omega,
                             const Vec& x0, double phi0, double t0, double t_end, double dt,
                             std::uint64_t seed, SelectionPolicy policy) {
    if (static_cast<int>(x0.size()) != field.dim)
        throw std::invalid_argument("sample_trajectory: dimension mismatch");
    Trajectory traj;
    traj.param_kind = ParamKind::time;
    traj.selection_seed = seed;
    Rng rng = Rng(seed).split(0x72616a);

    Vec x = x0;
    double phi = phi0;
    const int n = step_count(t0, t_end, dt);
    traj.samples.push_back({t0, x, phi, {}});
    for (int k = 0; k < n; ++k) {
        const double t = t0 + k * dt;
        const double step = std::min(dt, t_end - t);
        const VertexSample vs = field(phi, x);
        const Vec v = select_velocity(vs.vertices, policy, rng);
        const double w = select_omega(omega(x), policy, rng);
        axpy(x, step * field.epsilon, v);
        phi += step * w;
        if (field.domain && !field.domain->contains(x)) throw DomainExit(t + step, x);
        traj.samples.push_back({t + step, x, phi, {}});
    }
    return traj;
}

Trajectory sample_trajectory_phase(const SetValuedField& field_phi, const Vec& x0, double phi0,
                                   double phi_end, double dphi, std::uint64_t seed,
                                   SelectionPolicy policy) {
    if (static_cast<int>(x0.size()) != field_phi.dim)
        throw std::invalid_argument("sample_trajectory_phase: dimension mismatch");
    Trajectory traj;
    traj.param_kind = ParamKind::phase;
    traj.selection_seed = seed;
    Rng rng = Rng(seed).split(0x7068);

    Vec x = x0;
    const int n = step_count(phi0, phi_end, dphi);
    traj.samples.push_back({phi0, x, phi0, {}});
    for (int k = 0; k < n; ++k) {
        const double phi = phi0 + k * dphi;
        const double step = std::min(dphi, phi_end - phi);
        const VertexSample vs = field_phi(phi, x);
        const Vec v = select_velocity(vs.vertices, policy, rng);
        axpy(x, step * field_phi.epsilon, v);
        if (field_phi.domain && !field_phi.domain->contains(x))
            throw DomainExit(phi + step, x);
        traj.samples.push_back({phi + step, x, phi + step, {}});
    }
    return traj;
}

RecurrentSequence recurrent_times(const Trajectory& traj, double phi0, double omega_m,
                                  double omega_M) {
    if (traj.samples.size() < 2)
        throw std::invalid_argument("recurrent_times: trajectory too short");
    for (std::size_t i = 1; i < traj.samples.size(); ++i)
        if (traj.samples[i].phi < traj.samples[i - 1].phi)
            throw std::invalid_argument("recurrent_times: non-monotone phase");
    if (traj.samples.back().phi - phi0 < kTwoPi)
        throw std::invalid_argument("recurrent_times: trajectory covers less than one cycle");

    RecurrentSequence seq;
    double target = phi0 + kTwoPi;
    double prev_cross = traj.samples.front().param;
    for (std::size_t i = 1; i < traj.samples.size(); ++i) {
        const auto& a = traj.samples[i - 1];
        const auto& b = traj.samples[i];
        while (a.phi < target && b.phi >= target) {
            const double frac = (target - a.phi) / (b.phi - a.phi);
            const double t_cross = a.param + frac * (b.param - a.param);
            seq.crossings.push_back(t_cross);
            seq.deltas.push_back(t_cross - prev_cross);
            prev_cross = t_cross;
            target += kTwoPi;
        }
    }
    const double lo = kTwoPi / omega_M, hi = kTwoPi / omega_m;
    for (double d : seq.deltas) {
        if (d < lo - 1e-9 || d > hi + 1e-9) {
            std::ostringstream os;
            os << "recurrent_times: return interval " << d << " outside [" << lo << ", " << hi
               << "]";
            throw std::runtime_error(os.str());
        }
    }
    return seq;
}

CompactSet poincare_map(const SetValuedField& field_phi, const CompactSet& r0, double phi0,
                        double dphi, double h) {
    return propagate_phase(field_phi, r0, phi0, phi0 + kTwoPi, dphi, h, 1 << 30)
        .last()
        .set;
}

PeriodicFunnelResult periodic_funnel(const SetValuedField& field_phi, const CompactSet& r0,
                                     double phi0, double tol, int max_iter, double dphi,
                                     double h) {
    if (tol < 2.0 * h)
        throw std::invalid_argument("periodic_funnel: tol below the 2h resolution floor");
    if (max_iter < 1) throw std::invalid_argument("periodic_funnel: max_iter must be >= 1");

    PeriodicFunnelResult res;
    CompactSet current = r0;
    for (int it = 0; it < max_iter; ++it) {
        CompactSet next = poincare_map(field_phi, current, phi0, dphi, h);
        res.gaps.push_back(hausdorff(next, current));
        current = std::move(next);
        res.iterations = it + 1;
        if (res.gaps.back() <= tol) {
            res.converged = true;
            break;
        }
    }
    res.fixed_set = std::move(current);
    return res;
}

namespace {

// Window of graph points (s - center, x1..xn) for slices within +-eps_g.
void collect_window(const RfSolution& s, double center, double eps_g, double param_scale,
                    std::vector<Vec>& out) {
    out.clear();
    for (const CrossSection& cs : s.slices) {
        if (cs.param < center - eps_g - 1e-12 || cs.param > center + eps_g + 1e-12) continue;
        for (const Vec& p : cs.set.points) {
            Vec q(p.size() + 1);
            q[0] = (cs.param - center) * param_scale;
            std::copy(p.begin(), p.end(), q.begin() + 1);
            out.push_back(std::move(q));
        }
    }
}

double cloud_hausdorff(const std::vector<Vec>& a, const std::vector<Vec>& b) {
    auto directed = [](const std::vector<Vec>& p, const std::vector<Vec>& q) {
        double worst = 0.0;
        for (const Vec& x : p) {
            double best = std::numeric_limits<double>::infinity();
            for (const Vec& y : q) best = std::min(best, dist_sq(x, y));
            worst = std::max(worst, best);
        }
        return worst;
    };
    return std::sqrt(std::max(directed(a, b), directed(b, a)));
}

}  // namespace

GraphDistanceResult graph_distance(const RfSolution& s1, const RfSolution& s2, double eps_g,
                                   const TranslationSearch& search, double param_scale) {
    if (s1.param_kind != s2.param_kind)
        throw std::invalid_argument("graph_distance: mixed parameter kinds");
    if (eps_g < s1.step - 1e-12 || eps_g < s2.step - 1e-12)
        throw std::invalid_argument("graph_distance: eps_g must cover the recording step");

    std::vector<double> candidates;
    if (search.enabled) {
        if (search.step <= 0.0 || search.hi < search.lo)
            throw std::invalid_argument("graph_distance: bad translation grid");
        for (double T = search.lo; T <= search.hi + 1e-12; T += search.step)
            candidates.push_back(T);
    } else {
        candidates.push_back(0.0);
    }

    GraphDistanceResult best;
    best.distance = std::numeric_limits<double>::infinity();
    std::vector<Vec> w1, w2;
    for (double T : candidates) {
        double worst = 0.0;
        bool any = false;
        for (const CrossSection& cs : s1.slices) {
            collect_window(s1, cs.param, eps_g, param_scale, w1);
            collect_window(s2, cs.param + T, eps_g, param_scale, w2);
            if (w1.empty() || w2.empty()) continue;
            any = true;
            worst = std::max(worst, cloud_hausdorff(w1, w2));
            if (worst >= best.distance) break;  // cannot improve
        }
        const double d = any ? worst : std::numeric_limits<double>::infinity();
        if (d < best.distance) {
            best.distance = d;
            best.best_translation = T;
        }
    }
    return best;
}

}  // namespace gpdi
