// Set-valued vector fields X(phi, x) with interval phase velocity Omega(x),
// and the geometric averaging operator that replaces X by its phase average
// via support-function integration (Aumann sense on convex values).
#pragma once

#include <functional>
#include <optional>
#include <string>

#include "gpdi/sets.hpp"

namespace gpdi {

// One value of a set-valued map: finite vertex list, interpreted as
// conv(vertices) when `convex` is set.
struct VertexSample {
    std::vector<Vec> vertices;
    bool convex = true;

    void validate(int dim) const;
};

// Field evaluator producing vertex samples of X(phi, x). `phi` is always the
// accumulated lift on R; 2*pi-periodicity is a property of eval, not of the
// stored coordinate. `epsilon` is the slow-scale factor, so epsilon*X is the
// configured right-hand side. `domain` is the box the flow must stay in;
// empty bounds mean unrestricted.
struct SetValuedField {
    int dim = 0;
    std::function<VertexSample(double phi, const Vec& x)> eval;
    double bound = 1.0;      // M_X: |v| <= bound for every produced vertex
    double lipschitz = 1.0;  // lambda, Hausdorff sense in x
    double epsilon = 1.0;
    std::optional<Box> domain;

    VertexSample operator()(double phi, const Vec& x) const { return eval(phi, x); }
    bool in_domain(const Vec& x) const { return !domain || domain->contains(x); }
};

// Interval-valued angular velocity with uniform bounds 0 < m <= M.
struct PhaseVelocity {
    std::function<Interval(const Vec& x)> eval;
    double m = 1.0;
    double M = 1.0;
    double lipschitz = 0.0;  // lambda_omega

    Interval operator()(const Vec& x) const { return eval(x); }

    static PhaseVelocity constant(double lo, double hi);
};

// Phase-independent averaged field together with how it was produced.
struct AveragedField {
    int dim = 0;
    std::function<VertexSample(const Vec& x)> eval;
    int n_phi = 0;               // 0 for analytically averaged fields
    std::size_t grid_count = 0;  // directions used by the numerical average

    VertexSample operator()(const Vec& x) const { return eval(x); }

    // View the averaged field as a phi-indexed field again (eval ignores phi).
    SetValuedField as_field(const SetValuedField& source) const;
};

// Phase average of X(., x) over one cycle: per direction d the averaged
// support is the uniform phi-grid mean of support functions, and the returned
// vertex for d is the matching mean of supporting points. Rejects fields whose
// values are not flagged convex.
VertexSample average(const SetValuedField& field, const Vec& x, int n_phi,
                     const DirectionGrid& grid);

// Wraps average() into a reusable AveragedField.
AveragedField make_averaged(const SetValuedField& field, int n_phi, const DirectionGrid& grid);

// The explicit closeness-bound constant
//   c = (e^{lambda*M*L/m} - 1) * (4*pi*M_X/m + 2*pi*lambda_omega*M_X^2/lambda)
//       + 8*M_X*pi/m.
// Returns +inf when the exponential overflows (unbounded certificate).
double averaging_error_constant(double m, double M, double M_X, double lambda,
                                double lambda_omega, double L);

// Empirical Lipschitz constant of x -> X(phi, x): max over sampled pairs of
// d_H(X(phi,x0), X(phi,x1)) / |x0 - x1| over the box. Deterministic per seed.
double estimate_lipschitz(const SetValuedField& field, const Box& domain, int n_samples,
                          std::uint64_t seed);

// Builds the phase-parameterized field X_Phi(phi, x) = union over
// k in {1/w_hi, 1/w_mid, 1/w_lo} of k * epsilon * X(phi, x), the form marched
// by the phase propagator. The result has epsilon = 1.
SetValuedField make_phase_field(const SetValuedField& field, const PhaseVelocity& omega);

}  // namespace gpdi
