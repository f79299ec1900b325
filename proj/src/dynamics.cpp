#include "bnf/dynamics.hpp"

#include <cmath>
#include <stdexcept>

#include "bnf/parallel.hpp"
#include "bnf/rng.hpp"

namespace bnf {

namespace {

const Complex kI{0.0, 1.0};

struct FieldEval {
    const Hamiltonian* H;
    SymplecticForm form;

    // du_j = -i sgn^theta(j) (omega_j v_j + dP/dubar_j), dv likewise; u and v
    // are independent (v tracks ubar)
    void operator()(const std::vector<Complex>& u, const std::vector<Complex>& v,
                    std::vector<Complex>& du, std::vector<Complex>& dv) const {
        const LatticeConfig& lat = H->P.lattice();
        TangentVector X = hamiltonian_vector_field(H->P, form, std::span<const Complex>(u),
                                                   std::span<const Complex>(v));
        for (int idx = 0; idx < lat.size(); ++idx) {
            int j = lat.mode_at(idx);
            double sw = sgn_theta(form.theta, j);
            double w = H->H0.omega[static_cast<size_t>(idx)];
            du[static_cast<size_t>(idx)] =
                X.du[static_cast<size_t>(idx)] - kI * sw * w * u[static_cast<size_t>(idx)];
            dv[static_cast<size_t>(idx)] =
                X.dubar[static_cast<size_t>(idx)] + kI * sw * w * v[static_cast<size_t>(idx)];
        }
    }
};

struct PairState {
    std::vector<Complex> u, v;
};

bool midpoint_step(const FieldEval& field, const PairState& cur, double dt, double tol,
                   int max_iters, PairState& next) {
    size_t n = cur.u.size();
    next = cur;
    PairState mid{std::vector<Complex>(n), std::vector<Complex>(n)};
    std::vector<Complex> du(n), dv(n);
    for (int it = 0; it < max_iters; ++it) {
        for (size_t i = 0; i < n; ++i) {
            mid.u[i] = 0.5 * (cur.u[i] + next.u[i]);
            mid.v[i] = 0.5 * (cur.v[i] + next.v[i]);
        }
        field(mid.u, mid.v, du, dv);
        double delta = 0.0;
        for (size_t i = 0; i < n; ++i) {
            Complex nu = cur.u[i] + dt * du[i];
            Complex nv = cur.v[i] + dt * dv[i];
            delta = std::max(delta, std::max(std::abs(nu - next.u[i]), std::abs(nv - next.v[i])));
            next.u[i] = nu;
            next.v[i] = nv;
        }
        if (delta <= tol) return true;
    }
    return false;
}

void rk4_step(const FieldEval& field, const PairState& cur, double dt, PairState& next) {
    size_t n = cur.u.size();
    auto axpy = [n](const PairState& base, double a, const std::vector<Complex>& du,
                    const std::vector<Complex>& dv, PairState& out) {
        out.u.resize(n);
        out.v.resize(n);
        for (size_t i = 0; i < n; ++i) {
            out.u[i] = base.u[i] + a * du[i];
            out.v[i] = base.v[i] + a * dv[i];
        }
    };
    std::vector<Complex> k1u(n), k1v(n), k2u(n), k2v(n), k3u(n), k3v(n), k4u(n), k4v(n);
    PairState tmp;
    field(cur.u, cur.v, k1u, k1v);
    axpy(cur, 0.5 * dt, k1u, k1v, tmp);
    field(tmp.u, tmp.v, k2u, k2v);
    axpy(cur, 0.5 * dt, k2u, k2v, tmp);
    field(tmp.u, tmp.v, k3u, k3v);
    axpy(cur, dt, k3u, k3v, tmp);
    field(tmp.u, tmp.v, k4u, k4v);
    next.u.resize(n);
    next.v.resize(n);
    for (size_t i = 0; i < n; ++i) {
        next.u[i] = cur.u[i] + dt / 6.0 * (k1u[i] + 2.0 * k2u[i] + 2.0 * k3u[i] + k4u[i]);
        next.v[i] = cur.v[i] + dt / 6.0 * (k1v[i] + 2.0 * k2v[i] + 2.0 * k3v[i] + k4v[i]);
    }
}

double energy_of(const Hamiltonian& H, const PairState& ps) {
    const LatticeConfig& lat = H.P.lattice();
    double lin = 0.0;
    for (int idx = 0; idx < lat.size(); ++idx)
        lin += H.H0.omega[static_cast<size_t>(idx)] *
               (ps.u[static_cast<size_t>(idx)] * ps.v[static_cast<size_t>(idx)]).real();
    return lin + H.P.eval(std::span<const Complex>(ps.u), std::span<const Complex>(ps.v)).real();
}

}  // namespace

double momentum_functional(const State& s, int theta) {
    double acc = 0.0;
    for (int idx = 0; idx < s.size(); ++idx) {
        int j = s.lattice().mode_at(idx);
        acc += sgn_theta(theta, j) * double(j) * std::norm(s[idx]);
    }
    return acc;
}

Trajectory integrate(const Hamiltonian& H, const State& u0, IntegratorConfig cfg, double T,
                     double diag_p) {
    if (!(u0.lattice() == H.P.lattice()))
        throw std::invalid_argument("integrate: state lattice mismatch");
    if (cfg.dt <= 0.0) throw std::invalid_argument("integrate: dt must be > 0");
    FieldEval field{&H, SymplecticForm{H.theta}};

    PairState cur;
    cur.u = u0.data();
    cur.v.resize(cur.u.size());
    for (size_t i = 0; i < cur.u.size(); ++i) cur.v[i] = std::conj(cur.u[i]);

    Trajectory traj;
    traj.p = diag_p;
    auto record = [&](double t) {
        State s(u0.lattice());
        s.data() = cur.u;
        TrajectorySample d;
        d.t = t;
        d.norm_p = sobolev_norm(s, diag_p);
        d.energy = energy_of(H, cur);
        d.momentum = momentum_functional(s, H.theta);
        for (size_t i = 0; i < cur.u.size(); ++i)
            d.conj_defect = std::max(d.conj_defect, std::abs(cur.v[i] - std::conj(cur.u[i])));
        traj.times.push_back(t);
        traj.states.push_back(std::move(s));
        traj.diagnostics.push_back(d);
    };

    record(0.0);
    long long nsteps = (long long)std::ceil(T / cfg.dt - 1e-12);
    double dt = T / double(std::max(1LL, nsteps));
    long long step = 0;
    while (step < nsteps) {
        PairState next;
        if (cfg.scheme == Scheme::rk4_reference) {
            rk4_step(field, cur, dt, next);
        } else {
            // fixed-point non-convergence: halve dt (substep) up to 4 times
            int halvings = 0;
            double sub_dt = dt;
            int sub_steps = 1;
            while (true) {
                bool ok = true;
                PairState walk = cur;
                PairState out;
                for (int ss = 0; ss < sub_steps && ok; ++ss) {
                    ok = midpoint_step(field, walk, sub_dt, cfg.fixed_point_tol, cfg.max_iters,
                                       out);
                    walk = out;
                }
                if (ok) {
                    next = walk;
                    break;
                }
                if (++halvings > 4)
                    throw std::runtime_error("integrate: fixed point did not converge");
                sub_dt *= 0.5;
                sub_steps *= 2;
            }
        }
        cur = std::move(next);
        ++step;
        if (step % cfg.sample_every == 0 || step == nsteps) record(dt * double(step));
    }
    return traj;
}

State default_initial_state(const LatticeConfig& lat, double p, double eps, uint64_t seed) {
    Rng rng(seed);
    State s(lat);
    for (int idx = 0; idx < lat.size(); ++idx) {
        int j = lat.mode_at(idx);
        double phase = rng.uniform(0.0, 2.0 * M_PI);
        double amp = std::pow(angle_bracket(j), -(p + 1.0));
        s[idx] = amp * Complex{std::cos(phase), std::sin(phase)};
    }
    double nrm = pair_norm(s, p);
    if (nrm > 0.0) s.scale(eps / nrm);
    return s;
}

StabilityOutcome stability_time(const Hamiltonian& H, double epsilon, double p,
                                IntegratorConfig cfg, double T_max, double threshold_factor,
                                uint64_t seed) {
    if (epsilon <= 0.0) throw std::invalid_argument("stability_time: epsilon must be > 0");
    State u0 = default_initial_state(H.P.lattice(), p, epsilon, seed);
    Trajectory traj = integrate(H, u0, cfg, T_max, p);
    StabilityOutcome out;
    for (const auto& d : traj.diagnostics) {
        double ratio = std::sqrt(2.0) * d.norm_p / epsilon;  // ||(u,ubar)||_p / eps
        out.max_norm_ratio = std::max(out.max_norm_ratio, ratio);
        if (ratio >= threshold_factor && !out.escape_time) out.escape_time = d.t;
    }
    return out;
}

double drift_functional(const std::vector<const Polynomial*>& parts, const State& s, double p,
                        int theta) {
    SymplecticForm form{theta};
    double total = 0.0;
    for (const Polynomial* part : parts) {
        if (!part || part->empty()) continue;
        // along the flow of H, d||u||_p^2/dt evaluates {H, ||u||_p^2} in the
        // anchored bracket orientation
        Polynomial b = bracket_with_sobolev_sq(*part, p, form);
        total += b.eval(s).real();
    }
    return total;
}

DriftScaling drift_scaling(const std::vector<const Polynomial*>& parts, double p, int theta,
                           const std::vector<double>& R_ladder, int n_states, uint64_t seed,
                           int threads) {
    if (R_ladder.size() < 4) throw std::invalid_argument("drift_scaling: degenerate ladder");
    for (double r : R_ladder)
        if (r <= 0.0) throw std::invalid_argument("drift_scaling: radii must be > 0");

    const LatticeConfig* lat = nullptr;
    for (const Polynomial* part : parts)
        if (part) lat = &part->lattice();
    if (!lat) throw std::invalid_argument("drift_scaling: no parts");

    // unit-norm shapes, rescaled across rungs (keeps homogeneity exact)
    std::vector<State> shapes;
    for (int i = 0; i < n_states; ++i) {
        Rng rng(derive_seed(seed, i));
        State s(*lat);
        for (int idx = 0; idx < lat->size(); ++idx)
            s[idx] = Complex{rng.normal(), rng.normal()} * std::pow(angle_bracket(lat->mode_at(idx)), -(p + 1.0));
        double nrm = pair_norm(s, p);
        if (nrm > 0.0) s.scale(1.0 / nrm);
        shapes.push_back(std::move(s));
    }

    // precompute the bracket polynomials once
    std::vector<Polynomial> brackets;
    SymplecticForm form{theta};
    for (const Polynomial* part : parts)
        if (part && !part->empty()) brackets.push_back(bracket_with_sobolev_sq(*part, p, form));

    DriftScaling out;
    out.radii = R_ladder;
    out.max_drift.assign(R_ladder.size(), 0.0);
    std::vector<std::vector<double>> per_rung(R_ladder.size(),
                                              std::vector<double>(shapes.size(), 0.0));
    parallel_for(R_ladder.size() * shapes.size(), threads, [&](size_t flat) {
        size_t rung = flat / shapes.size();
        size_t si = flat % shapes.size();
        State s = shapes[si];
        s.scale(R_ladder[rung]);
        double drift = 0.0;
        for (const auto& b : brackets) drift += b.eval(s).real();
        per_rung[rung][si] = std::abs(drift);
    });
    for (size_t rung = 0; rung < R_ladder.size(); ++rung)
        for (double d : per_rung[rung]) out.max_drift[rung] = std::max(out.max_drift[rung], d);

    bool all_zero = true;
    for (double d : out.max_drift)
        if (d > 0.0) all_zero = false;
    if (all_zero) {
        out.conserved = true;
        return out;
    }

    // least squares on (log R, log drift)
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    size_t n = R_ladder.size();
    for (size_t i = 0; i < n; ++i) {
        double x = std::log(R_ladder[i]);
        double y = std::log(std::max(out.max_drift[i], 1e-300));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    out.slope = (double(n) * sxy - sx * sy) / (double(n) * sxx - sx * sx);
    return out;
}

}  // namespace bnf
