// Integral-funnel propagation in time and in phase, single-valued trajectory
// sampling, recurrent-time detection, Poincare maps on compact sets, and the
// translation-searched graph distance between funnels.
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>

#include "gpdi/inclusion.hpp"

namespace gpdi {

enum class ParamKind { time, phase };

// A recorded cross-section. For time-parameterized runs the joint (x, phi)
// cloud is projected to x and the phi interval hull is kept alongside.
struct CrossSection {
    double param = 0.0;
    CompactSet set;
    Interval phase_window;  // meaningful for time-parameterized runs only
};

struct RfSolution {
    ParamKind param_kind = ParamKind::time;
    std::vector<CrossSection> slices;
    double step = 0.0;        // recording interval in the march parameter
    double resolution = 0.0;  // pruning radius h
    std::uint64_t seed = 0;
    // Final cloud for chaining runs: joint (x..., phi) when time-kind,
    // plain x when phase-kind.
    std::vector<Vec> final_points;

    const CrossSection& last() const { return slices.back(); }
    // Slices with param in [lo, hi].
    RfSolution subrange(double lo, double hi) const;
};

struct TrajectorySample {
    double param = 0.0;
    Vec x;
    double phi = 0.0;
    Vec u;  // filled by controlled runs; empty otherwise
};

struct Trajectory {
    ParamKind param_kind = ParamKind::time;
    std::vector<TrajectorySample> samples;
    std::uint64_t selection_seed = 0;
};

struct RecurrentSequence {
    std::vector<double> deltas;     // delta t_k between consecutive returns
    std::vector<double> crossings;  // times with phi = phi0 + 2*k*pi
};

// Raised when a propagated point leaves the declared domain.
struct DomainExit : std::runtime_error {
    DomainExit(double param_, Vec x_);
    double param;
    Vec x;
};

// One-step Euler union in the joint (x, phi) state:
//   R(t+dt) = prune(U_{(x,phi)} U_{v, w} {(x + dt*eps*v, phi + dt*w)}, h)
// with w sampled at {lo, mid, hi} of Omega(x). Slices are recorded every
// `record_stride` steps plus the final one.
RfSolution propagate_time(const SetValuedField& field, const PhaseVelocity& omega,
                          const CompactSet& r0, double phi0, double t0, double t_end,
                          double dt, double h, int record_stride = 1);

// Same march started from an existing joint (x..., phi) cloud.
RfSolution propagate_time_joint(const SetValuedField& field, const PhaseVelocity& omega,
                                std::vector<Vec> joint, double t0, double t_end, double dt,
                                double h, int record_stride = 1);

// Phase-parameterized march of a field already in phase form (see
// make_phase_field): R(phi+dphi) = prune(U {x + dphi*eps*v}, h).
RfSolution propagate_phase(const SetValuedField& field_phi, const CompactSet& r0, double phi0,
                           double phi_end, double dphi, double h, int record_stride = 1);

enum class SelectionPolicy { random, min_norm, max_norm, omega_lo, omega_hi };

// Single Caratheodory trajectory via per-step seeded (or named-policy)
// selection of one vertex and one angular velocity.
Trajectory sample_trajectory(const SetValuedField& field, const PhaseVelocity& omega,
                             const Vec& x0, double phi0, double t0, double t_end, double dt,
                             std::uint64_t seed,
                             SelectionPolicy policy = SelectionPolicy::random);

Trajectory sample_trajectory_phase(const SetValuedField& field_phi, const Vec& x0, double phi0,
                                   double phi_end, double dphi, std::uint64_t seed,
                                   SelectionPolicy policy = SelectionPolicy::random);

// Crossing times of phi = phi0 + 2*k*pi located by linear interpolation.
// Rejects non-monotone phase; enforces delta t in [2pi/M, 2pi/m].
RecurrentSequence recurrent_times(const Trajectory& traj, double phi0, double omega_m,
                                  double omega_M);

// Slice of the phase march at phi0 + 2*pi.
CompactSet poincare_map(const SetValuedField& field_phi, const CompactSet& r0, double phi0,
                        double dphi, double h);

struct PeriodicFunnelResult {
    bool converged = false;
    CompactSet fixed_set;
    std::vector<double> gaps;  // Hausdorff gap per iteration
    int iterations = 0;
};

// Fixed-point iteration of the Poincare map on compact sets; stops when the
// iterate gap drops to tol (tol >= 2h required). Non-convergence after
// max_iter is reported, not thrown.
PeriodicFunnelResult periodic_funnel(const SetValuedField& field_phi, const CompactSet& r0,
                                     double phi0, double tol, int max_iter, double dphi,
                                     double h);

struct TranslationSearch {
    bool enabled = false;
    double lo = 0.0;
    double hi = 0.0;
    double step = 0.0;

    static TranslationSearch none() { return {}; }
    static TranslationSearch constant_grid(double lo, double hi, double step) {
        return {true, lo, hi, step};
    }
};

struct GraphDistanceResult {
    double distance = 0.0;
    double best_translation = 0.0;
};

// Hausdorff distance between eps_g-windowed graphs of two runs, minimized
// over constant time translations T on a user grid. For each reference param
// t the window collects all slices within +-eps_g as points (s - center, x),
// the param axis weighted by `param_scale` against the state norm.
GraphDistanceResult graph_distance(const RfSolution& s1, const RfSolution& s2, double eps_g,
                                   const TranslationSearch& search, double param_scale = 1.0);

}  // namespace gpdi
