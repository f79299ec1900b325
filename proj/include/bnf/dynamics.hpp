#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bnf/bracket.hpp"
#include "bnf/pde.hpp"
#include "bnf/state.hpp"

namespace bnf {

enum class Scheme { implicit_midpoint, rk4_reference };

struct IntegratorConfig {
    Scheme scheme = Scheme::implicit_midpoint;
    double dt = 1e-3;
    double fixed_point_tol = 1e-13;
    int max_iters = 100;
    int sample_every = 1;  // diagnostics stride, in steps

    static double default_dt(double max_abs_omega) {
        return 1e-3 * 2.0 * M_PI / std::max(1.0, max_abs_omega);
    }
};

struct TrajectorySample {
    double t = 0.0;
    double norm_p = 0.0;       // ||u||_p
    double energy = 0.0;       // H(u, ubar)
    double momentum = 0.0;     // sum_j sgn^theta(j) j |u_j|^2
    double conj_defect = 0.0;  // max |ubar_j - conj(u_j)|
};

struct Trajectory {
    std::vector<double> times;
    std::vector<State> states;
    std::vector<TrajectorySample> diagnostics;
    double p = 2.0;
};

// Flow of u' = X_H(u): implicit midpoint with fixed-point iteration (u and
// ubar evolved as independent variables), or the non-symplectic RK4 reference.
// Non-convergence halves dt up to 4 times before giving up.
Trajectory integrate(const Hamiltonian& H, const State& u0, IntegratorConfig cfg, double T,
                     double diag_p = 2.0);

// sum_j sgn^theta(j) j |u_j|^2: conserved whenever every P-term has momentum 0
double momentum_functional(const State& s, int theta);

// Deterministic initial shape u_j ~ <j>^{-(p+1)} e^{i phi_j}, scaled so that
// ||(u, ubar)||_p = eps.
State default_initial_state(const LatticeConfig& lat, double p, double eps, uint64_t seed);

struct StabilityOutcome {
    std::optional<double> escape_time;  // empty = survived to T_max
    double max_norm_ratio = 0.0;
};

StabilityOutcome stability_time(const Hamiltonian& H, double epsilon, double p,
                                IntegratorConfig cfg, double T_max,
                                double threshold_factor = 2.0, uint64_t seed = 7);

// instantaneous d||u||_p^2/dt from the given Hamiltonian parts (H_0 omitted:
// its bracket vanishes identically)
double drift_functional(const std::vector<const Polynomial*>& parts, const State& s, double p,
                        int theta);

struct DriftScaling {
    std::vector<double> radii;
    std::vector<double> max_drift;
    double slope = 0.0;       // least-squares d log(drift) / d log(R)
    bool conserved = false;   // drift identically zero on the ladder
};

// max |drift| over n_states random shapes per rung (the same shapes rescaled
// across rungs), with a log-log least-squares slope
DriftScaling drift_scaling(const std::vector<const Polynomial*>& parts, double p, int theta,
                           const std::vector<double>& R_ladder, int n_states, uint64_t seed,
                           int threads = 0);

}  // namespace bnf
