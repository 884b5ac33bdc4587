// Named example systems and their strict-config construction. Systems are
// declared in a JSON-compatible object {name, params, epsilon, M_X, lambda,
// omega:{m,M,lambda_omega}, x0, domain}; unknown keys or unknown system names
// are rejected.
#pragma once

#include <map>
#include <optional>
#include <string>

#include "gpdi/inclusion.hpp"

namespace gpdi {

struct SystemConfig {
    std::string name;
    std::map<std::string, double> params;
    double epsilon = 1.0;
    std::optional<double> bound;         // overrides the declared M_X
    std::optional<double> lipschitz;     // overrides the declared lambda
    std::optional<double> omega_m;
    std::optional<double> omega_M;
    std::optional<double> omega_lipschitz;
    std::optional<Vec> x0;
    std::optional<Box> domain;
};

struct System {
    std::string name;
    SetValuedField field;  // X(phi, x); field.epsilon carries the slow scale
    PhaseVelocity omega;
    Vec x0;
    // Closed-form phase average when the system ships one (the numerical
    // operator remains available for all of them).
    std::optional<AveragedField> averaged_analytic;
    std::optional<Vec> critical_point;      // declared limit of the averaged flow
    std::optional<CompactSet> invariant_set;  // declared invariant set of the average
};

// Construct a shipped system; throws std::invalid_argument with the list of
// available names when `config.name` is unknown, and rejects unknown params.
System make_system(const SystemConfig& config);

std::vector<std::string> available_systems();

// Max over sampled (phi, x) of d_H(X(phi,x), X(phi+2pi,x)); the periodicity
// defect of the evaluator.
double periodicity_defect(const SetValuedField& field, const Box& box, int n_samples,
                          std::uint64_t seed);

}  // namespace gpdi
