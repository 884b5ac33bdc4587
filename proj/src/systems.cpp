#include "gpdi/systems.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace gpdi {

namespace {

struct Spec {
    std::map<std::string, double> defaults;
    System (*build)(const std::map<std::string, double>&);
};

double param(const std::map<std::string, double>& p, const std::string& key) {
    return p.at(key);
}

Box box1(double lo, double hi) { return Box{{lo}, {hi}}; }

System build_decay_cos_disk(const std::map<std::string, double>& p) {
    const double r = param(p, "r");
    System s;
    s.name = "decay_cos_disk";
    s.field.dim = 1;
    s.field.eval = [r](double phi, const Vec& x) {
        const double drift = -x[0] + std::cos(phi);
        VertexSample v;
        if (r == 0.0)
            v.vertices = {{drift}};
        else
            v.vertices = {{drift - r}, {drift + r}};
        return v;
    };
    s.field.domain = box1(-3.0, 3.0);
    s.field.bound = 3.0 + 1.0 + r;
    s.field.lipschitz = 1.0;
    s.omega = PhaseVelocity::constant(1.0, 1.0);
    s.omega.lipschitz = 1e-9;
    s.x0 = {0.0};
    AveragedField avg;
    avg.dim = 1;
    avg.eval = [r](const Vec& y) {
        VertexSample v;
        if (r == 0.0)
            v.vertices = {{-y[0]}};
        else
            v.vertices = {{-y[0] - r}, {-y[0] + r}};
        return v;
    };
    s.averaged_analytic = avg;
    s.critical_point = Vec{0.0};
    return s;
}

System build_linear_contracting(const std::map<std::string, double>& p) {
    const double k = param(p, "rate");
    const double c = param(p, "center");
    const double w = param(p, "disturbance");
    System s;
    s.name = "linear_contracting";
    s.field.dim = 1;
    s.field.eval = [k, c, w](double, const Vec& x) {
        const double drift = -k * (x[0] - c);
        VertexSample v;
        if (w == 0.0)
            v.vertices = {{drift}};
        else
            v.vertices = {{drift - w}, {drift + w}};
        return v;
    };
    s.field.domain = box1(c - 3.0, c + 3.0);
    s.field.bound = 3.0 * k + w;
    s.field.lipschitz = k;
    s.omega = PhaseVelocity::constant(1.0, 1.0);
    s.omega.lipschitz = 1e-9;
    s.x0 = {c + 1.0};
    AveragedField avg;
    avg.dim = 1;
    avg.eval = [k, c, w](const Vec& y) {
        const double drift = -k * (y[0] - c);
        VertexSample v;
        if (w == 0.0)
            v.vertices = {{drift}};
        else
            v.vertices = {{drift - w}, {drift + w}};
        return v;
    };
    s.averaged_analytic = avg;
    s.critical_point = Vec{c};
    if (w > 0.0)
        s.invariant_set = CompactSet::interval(c - w / k, c + w / k, std::min(0.01, w / k));
    else
        s.invariant_set = CompactSet::singleton({c});
    return s;
}

System build_decay_cos_center(const std::map<std::string, double>& p) {
    const double k = param(p, "rate");
    const double c = param(p, "center");
    const double a = param(p, "amplitude");
    System s;
    s.name = "decay_cos_center";
    s.field.dim = 1;
    s.field.eval = [k, c, a](double phi, const Vec& x) {
        return VertexSample{{{-k * (x[0] - c) + a * std::cos(phi)}}, true};
    };
    s.field.domain = box1(c - 3.0, c + 3.0);
    s.field.bound = 3.0 * k + a;
    s.field.lipschitz = k;
    s.omega = PhaseVelocity::constant(1.0, 1.0);
    s.omega.lipschitz = 1e-9;
    s.x0 = {c - 1.0};
    AveragedField avg;
    avg.dim = 1;
    avg.eval = [k, c](const Vec& y) {
        return VertexSample{{{-k * (y[0] - c)}}, true};
    };
    s.averaged_analytic = avg;
    s.critical_point = Vec{c};
    s.invariant_set = CompactSet::singleton({c});
    return s;
}

System build_circle_disk(const std::map<std::string, double>& p) {
    const double r = param(p, "r");
    const int nv = std::max(4, static_cast<int>(param(p, "vertices")));
    System s;
    s.name = "circle_disk";
    s.field.dim = 2;
    s.field.eval = [r, nv](double phi, const Vec&) {
        VertexSample v;
        const double cx = std::cos(phi), cy = std::sin(phi);
        if (r == 0.0) {
            v.vertices = {{cx, cy}};
            return v;
        }
        v.vertices.reserve(nv);
        for (int i = 0; i < nv; ++i) {
            const double th = kTwoPi * i / nv;
            v.vertices.push_back({cx + r * std::cos(th), cy + r * std::sin(th)});
        }
        return v;
    };
    s.field.domain = Box{{-5.0, -5.0}, {5.0, 5.0}};
    s.field.bound = 1.0 + r;
    s.field.lipschitz = 1e-9;  // state-independent
    s.omega = PhaseVelocity::constant(1.0, 1.0);
    s.omega.lipschitz = 1e-9;
    s.x0 = {0.0, 0.0};
    AveragedField avg;
    avg.dim = 2;
    avg.eval = [r, nv](const Vec&) {
        VertexSample v;
        if (r == 0.0) {
            v.vertices = {{0.0, 0.0}};
            return v;
        }
        v.vertices.reserve(nv);
        for (int i = 0; i < nv; ++i) {
            const double th = kTwoPi * i / nv;
            v.vertices.push_back({r * std::cos(th), r * std::sin(th)});
        }
        return v;
    };
    s.averaged_analytic = avg;
    return s;
}

System build_pendulum_uncertain_length(const std::map<std::string, double>& p) {
    const double g = param(p, "g");
    const double l0 = param(p, "length");
    const double delta = param(p, "length_spread");
    const double damping = param(p, "damping");
    const double a = param(p, "drive");
    System s;
    s.name = "pendulum_uncertain_length";
    s.field.dim = 2;
    const double l_lo = l0 * (1.0 - delta), l_hi = l0 * (1.0 + delta);
    s.field.eval = [g, l_lo, l_hi, damping, a](double phi, const Vec& x) {
        VertexSample v;
        const double drive = a * std::cos(phi);
        for (double l : {l_lo, l_hi})
            v.vertices.push_back({x[1], -(g / l) * std::sin(x[0]) - damping * x[1] + drive});
        return v;
    };
    s.field.domain = Box{{-kTwoPi, -6.0}, {kTwoPi, 6.0}};
    s.field.bound = 6.0 + g / l_lo + damping * 6.0 + a;
    s.field.lipschitz = g / l_lo + damping + 1.0;
    s.omega = PhaseVelocity::constant(0.8, 1.2);
    s.omega.lipschitz = 1e-9;
    s.x0 = {0.5, 0.0};
    return s;
}

System build_expanding(const std::map<std::string, double>& p) {
    const double k = param(p, "rate");
    System s;
    s.name = "expanding";
    s.field.dim = 1;
    s.field.eval = [k](double, const Vec& x) {
        return VertexSample{{{k * x[0]}}, true};
    };
    s.field.domain = box1(-1e6, 1e6);
    s.field.bound = 1e6 * k;
    s.field.lipschitz = k;
    s.omega = PhaseVelocity::constant(1.0, 1.0);
    s.omega.lipschitz = 1e-9;
    s.x0 = {1.0};
    AveragedField avg;
    avg.dim = 1;
    avg.eval = [k](const Vec& y) {
        return VertexSample{{{k * y[0]}}, true};
    };
    s.averaged_analytic = avg;
    return s;
}

System build_constant_drift(const std::map<std::string, double>& p) {
    const double v0 = param(p, "v");
    const double wlo = param(p, "omega_lo");
    const double whi = param(p, "omega_hi");
    System s;
    s.name = "constant_drift";
    s.field.dim = 1;
    s.field.eval = [v0](double, const Vec&) {
        return VertexSample{{{v0}}, true};
    };
    s.field.domain = box1(-1e6, 1e6);
    s.field.bound = std::abs(v0) + 1e-9;
    s.field.lipschitz = 1e-9;
    s.omega = PhaseVelocity::constant(wlo, whi);
    s.omega.lipschitz = 1e-9;
    s.x0 = {0.0};
    AveragedField avg;
    avg.dim = 1;
    avg.eval = [v0](const Vec&) {
        return VertexSample{{{v0}}, true};
    };
    s.averaged_analytic = avg;
    return s;
}

const std::map<std::string, Spec>& registry() {
    static const std::map<std::string, Spec> reg = {
        {"decay_cos_disk", {{{"r", 0.1}}, build_decay_cos_disk}},
        {"linear_contracting",
         {{{"rate", 1.0}, {"center", 0.0}, {"disturbance", 0.1}}, build_linear_contracting}},
        {"decay_cos_center",
         {{{"rate", 1.0}, {"center", 1.0}, {"amplitude", 0.3}}, build_decay_cos_center}},
        {"circle_disk", {{{"r", 0.5}, {"vertices", 64.0}}, build_circle_disk}},
        {"pendulum_uncertain_length",
         {{{"g", 9.81},
           {"length", 1.0},
           {"length_spread", 0.1},
           {"damping", 0.5},
           {"drive", 0.2}},
          build_pendulum_uncertain_length}},
        {"expanding", {{{"rate", 1.0}}, build_expanding}},
        {"constant_drift",
         {{{"v", 1.0}, {"omega_lo", 1.0}, {"omega_hi", 1.0}}, build_constant_drift}},
    };
    return reg;
}

}  // namespace

std::vector<std::string> available_systems() {
    std::vector<std::string> names;
    for (const auto& [name, spec] : registry()) names.push_back(name);
    return names;
}

System make_system(const SystemConfig& config) {
    const auto it = registry().find(config.name);
    if (it == registry().end()) {
        std::ostringstream msg;
        msg << "unknown system '" << config.name << "'; available:";
        for (const auto& n : available_systems()) msg << " " << n;
        throw std::invalid_argument(msg.str());
    }

    std::map<std::string, double> params = it->second.defaults;
    for (const auto& [key, value] : config.params) {
        if (params.find(key) == params.end()) {
            std::ostringstream msg;
            msg << "unknown parameter '" << key << "' for system '" << config.name << "'";
            throw std::invalid_argument(msg.str());
        }
        params[key] = value;
    }

    System s = it->second.build(params);
    if (config.epsilon <= 0.0)
        throw std::invalid_argument("system config: epsilon must be positive");
    s.field.epsilon = config.epsilon;
    if (config.bound) s.field.bound = *config.bound;
    if (config.lipschitz) s.field.lipschitz = *config.lipschitz;
    if (config.omega_m || config.omega_M) {
        const double lo = config.omega_m.value_or(s.omega.m);
        const double hi = config.omega_M.value_or(s.omega.M);
        const double lw = config.omega_lipschitz.value_or(s.omega.lipschitz);
        s.omega = PhaseVelocity::constant(lo, hi);
        s.omega.lipschitz = lw;
    } else if (config.omega_lipschitz) {
        s.omega.lipschitz = *config.omega_lipschitz;
    }
    if (config.x0) {
        if (static_cast<int>(config.x0->size()) != s.field.dim)
            throw std::invalid_argument("system config: x0 dimension mismatch");
        s.x0 = *config.x0;
    }
    if (config.domain) {
        if (config.domain->dim() != s.field.dim)
            throw std::invalid_argument("system config: domain dimension mismatch");
        s.field.domain = config.domain;
    }
    return s;
}

double periodicity_defect(const SetValuedField& field, const Box& box, int n_samples,
                          std::uint64_t seed) {
    Rng rng(seed);
    double worst = 0.0;
    for (int i = 0; i < n_samples; ++i) {
        const double phi = rng.uniform(0.0, kTwoPi);
        const Vec x = rng.point_in_box(box);
        const CompactSet a = CompactSet::from_points(field(phi, x).vertices);
        const CompactSet b = CompactSet::from_points(field(phi + kTwoPi, x).vertices);
        worst = std::max(worst, hausdorff(a, b));
    }
    return worst;
}

}  // namespace gpdi
