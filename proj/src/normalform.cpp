#include "bnf/normalform.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

namespace bnf {

namespace {
const Complex kI{0.0, 1.0};

double max_rel_coeff(const Polynomial& residual, const Polynomial& reference) {
    double worst = 0.0;
    for (const auto& [mi, c] : residual.terms()) {
        double ref = std::abs(reference.coefficient(mi));
        worst = std::max(worst, std::abs(c.scalar) / (1.0 + ref));
    }
    return worst;
}

bool fully_ledgered(const Polynomial& f) {
    for (const auto& [mi, c] : f.terms())
        if (!c.ledger) return false;
    return true;
}

// one time-1-flow pullback step, structured when possible:
// f_(nu) = (1/nu) {S, f_(nu-1)} = -(1/nu) {f_(nu-1), S}
Polynomial stage_bracket(const Polynomial& f, const Polynomial& S, SymplecticForm form,
                         bool structured, int max_degree) {
    Polynomial out = (structured && form.theta == 0 && fully_ledgered(f))
                         ? poisson_with_generator(f, S, max_degree)
                         : poisson(f, S, form, max_degree);
    out.scale(-1.0);
    return out;
}

// f composed with the time-1 flow of S, pruned to max_degree per step
Polynomial stage_lie(const Polynomial& f, const Polynomial& S, SymplecticForm form, int max_degree,
                     bool structured) {
    Polynomial total = f.degree_slice(0, max_degree);
    if (S.empty()) return total;
    Polynomial current = total;
    for (int nu = 1; !current.empty(); ++nu) {
        Polynomial next = stage_bracket(current, S, form, structured, max_degree);
        next.scale(1.0 / double(nu));
        if (next.empty()) break;
        total.add(next);
        current = std::move(next);
    }
    return total;
}

// sum_{nu>=1} (H_0)_(nu) via the homological identity (H_0)_(1) = Z - gle
Polynomial h0_lie_tail(const Polynomial& first, const Polynomial& S, SymplecticForm form,
                       int max_degree, bool structured) {
    Polynomial total = first.degree_slice(0, max_degree);
    Polynomial current = total;
    for (int nu = 2; !current.empty(); ++nu) {
        Polynomial next = stage_bracket(current, S, form, structured, max_degree);
        next.scale(1.0 / double(nu));
        if (next.empty()) break;
        total.add(next);
        current = std::move(next);
    }
    return total;
}

size_t ledger_entry_count(const Polynomial& f) {
    size_t n = 0;
    for (const auto& [mi, c] : f.terms())
        if (c.ledger) n += c.ledger->size();
    return n;
}

void strip_ledgers(Polynomial& f) {
    Polynomial out(f.lattice());
    for (const auto& [mi, c] : f.terms()) out.add_term(mi, Coefficient(c.scalar));
    out.set_provenance("scalar(dropped: ledger budget)");
    f = std::move(out);
}

}  // namespace

void NormalFormParams::validate() const {
    if (gamma <= 0.0) throw std::invalid_argument("params: gamma must be > 0");
    if (alpha <= 1.0) throw std::invalid_argument("params: alpha must be > 1");
    if (N < 1) throw std::invalid_argument("params: N must be >= 1");
    if (r_star < 1) throw std::invalid_argument("params: r_star must be >= 1");
}

bool NormalFormParams::n_window_ok(double R) const {
    double denom = p - 2.0 - 2.0 * alpha * double(r_star + 1);
    if (denom == 0.0) return false;
    double lower = std::pow(std::pow(R, double(r_star - 2)) * std::pow(gamma, double(r_star + 1)),
                            -1.0 / denom);
    double upper = std::pow(gamma * std::pow(R, -1.0 / double((r_star + 1) * (r_star + 2))),
                            1.0 / (2.0 * alpha));
    return lower <= double(N) && double(N) <= upper;
}

int M_lk(const MultiIndexPair& mi, int N) { return std::max(N, mi.max_support_abs()); }

bool is_resonant_term(const FrequencyVector& omega, const MultiIndexPair& mi,
                      const NormalFormParams& params, int theta) {
    double divisor = small_divisor(omega, mi, theta);
    double threshold = params.gamma * double(M_lk(mi, params.N)) / std::pow(params.N, params.alpha);
    return std::abs(divisor) <= threshold;
}

std::pair<Polynomial, Polynomial> nf_projector(const Polynomial& f, const FrequencyVector& omega,
                                               const NormalFormParams& params, int theta) {
    Polynomial res(f.lattice()), nonres(f.lattice());
    res.set_provenance(f.provenance());
    nonres.set_provenance(f.provenance());
    for (const auto& [mi, c] : f.terms()) {
        if (is_resonant_term(omega, mi, params, theta))
            res.add_term(mi, c);
        else
            nonres.add_term(mi, c);
    }
    return {std::move(res), std::move(nonres)};
}

HomologicalSolution solve_homological(const FrequencyVector& omega, const Polynomial& g,
                                      const NormalFormParams& params, int theta) {
    HomologicalSolution sol{Polynomial(g.lattice()), Polynomial(g.lattice()), 0.0};
    sol.Z.set_provenance(g.provenance());
    for (const auto& [mi, c] : g.terms()) {
        if (is_resonant_term(omega, mi, params, theta)) {
            sol.Z.add_term(mi, c);
            continue;
        }
        double divisor = small_divisor(omega, mi, theta);
        if (std::abs(divisor) < 1e-300)
            throw std::runtime_error("solve_homological: numerical small divisor underflow");
        Coefficient sc;
        sc.scalar = -c.scalar / (kI * divisor);
        sol.S.add_term(mi, sc);
    }
    if (theta == 1) sol.S.refresh_tilde();

    // residual of {H_0, S} + Z - g, term by term
    Polynomial residual = poisson(h0_polynomial(omega), sol.S, SymplecticForm{theta});
    residual.add(sol.Z);
    residual.subtract(g);
    sol.residual = max_rel_coeff(residual, g);
    return sol;
}

NormalFormResult birkhoff_iterate(const FrequencyVector& h0_freqs, const Polynomial& P,
                                  const NormalFormParams& params, int theta,
                                  BirkhoffOptions opts) {
    params.validate();
    const LatticeConfig& lat = P.lattice();
    if (!(h0_freqs.lattice == lat))
        throw std::invalid_argument("birkhoff_iterate: lattice mismatch");
    if (!P.empty() && P.min_degree() < 3)
        throw std::invalid_argument("birkhoff_iterate: P must have min degree 3");

    const int top = params.r_star + 3;
    const int rt_cap = opts.rt_degree_cap > 0 ? opts.rt_degree_cap : params.r_star + 4;
    if (rt_cap < params.r_star + 4)
        throw std::invalid_argument("birkhoff_iterate: rt_degree_cap below r_star + 4");
    SymplecticForm form{theta};

    NormalFormResult result;
    result.rt_degree_cap = rt_cap;
    result.Z = Polynomial(lat);
    result.R_N = Polynomial(lat);
    result.R_T = P.degree_slice(top + 1, rt_cap);
    Polynomial bulk = P.degree_slice(3, top);

    bool structured = (theta == 0) && !P.empty() && fully_ledgered(P);
    result.ledger_structured = structured;

    for (int stage = 0; stage <= params.r_star; ++stage) {
        auto t0 = std::chrono::steady_clock::now();
        const int d = stage + 3;
        StageDiagnostics diag;
        diag.stage = stage;
        diag.degree = d;

        // ledger sizes compound along bracket chains; beyond the budget the
        // iteration drops to scalar coefficients and records the loss
        if (structured) {
            size_t entries = ledger_entry_count(bulk) + ledger_entry_count(result.Z) +
                             ledger_entry_count(result.R_N) + ledger_entry_count(result.R_T);
            if (entries > opts.ledger_entry_budget) {
                strip_ledgers(bulk);
                strip_ledgers(result.Z);
                strip_ledgers(result.R_N);
                strip_ledgers(result.R_T);
                structured = false;
                result.ledger_structured = false;
            }
        }

        Polynomial g_d = bulk.homogeneous_part(d);
        diag.g_terms = g_d.term_count();
        Polynomial gle = gamma_le2(g_d, params.N);
        Polynomial ggt = gamma_gt2(g_d, params.N);

        HomologicalSolution hom = solve_homological(h0_freqs, gle, params, theta);
        diag.hom_residual = hom.residual;
        diag.S_terms = hom.S.term_count();

        Polynomial z_prev = result.Z;
        Polynomial rn_prev = result.R_N;
        result.Z.add(hom.Z);
        result.R_N.add(ggt);

        // transformed Hamiltonian above H_0: the H_0 series enters through the
        // homological identity {H_0, S} = Z - gle, which keeps the normalized
        // degree cancellation (and the ledgers) exact
        Polynomial rest(lat);
        if (hom.S.empty()) {
            rest = bulk + result.R_T;
        } else {
            Polynomial first = hom.Z;
            first.subtract(gle);
            rest.add(h0_lie_tail(first, hom.S, form, rt_cap, structured));
            rest.add(stage_lie(z_prev, hom.S, form, rt_cap, structured));
            rest.add(stage_lie(rn_prev, hom.S, form, rt_cap, structured));
            rest.add(stage_lie(bulk, hom.S, form, rt_cap, structured));
            rest.add(stage_lie(result.R_T, hom.S, form, rt_cap, structured));
            rest.subtract(z_prev);
            rest.subtract(rn_prev);
        }
        rest.subtract(hom.Z);
        rest.subtract(ggt);

        // split what is left into the next bulk / R_T; the window <= d must
        // cancel, its residue is recorded and dropped
        Polynomial new_rt(lat);
        Polynomial new_bulk(lat);
        Polynomial leftover(lat);
        for (const auto& [mi, c] : rest.terms()) {
            int deg = mi.degree();
            if (deg > top)
                new_rt.add_term(mi, c);
            else if (deg > d)
                new_bulk.add_term(mi, c);
            else
                leftover.add_term(mi, c);
        }
        diag.cancel_residual = max_rel_coeff(leftover, g_d);
        if (structured) {
            new_bulk.set_provenance("ledger");
            new_rt.set_provenance("ledger");
        }
        bulk = std::move(new_bulk);
        result.R_T = std::move(new_rt);
        if (theta == 1) {
            bulk.refresh_tilde();
            result.R_T.refresh_tilde();
            result.Z.refresh_tilde();
            result.R_N.refresh_tilde();
        }
        if (structured) {
            structured = fully_ledgered(bulk) && fully_ledgered(result.R_T) &&
                         fully_ledgered(result.Z) && fully_ledgered(result.R_N);
            if (!structured) result.ledger_structured = false;
        }

        result.generators.push_back(std::move(hom.S));
        diag.Z_terms = result.Z.term_count();
        diag.RN_terms = result.R_N.term_count();
        diag.structured = structured;
        diag.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                      .count();
        result.stages.push_back(diag);
    }
    return result;
}

State generator_flow(const Polynomial& S, const State& s, double time, int theta,
                     const FlowConfig& cfg) {
    if (S.empty() || time == 0.0) return s;
    SymplecticForm form{theta};
    double entry_norm = pair_norm(s, 2.0);
    int nsteps = std::max(1, (int)std::ceil(std::abs(time) / cfg.dt));
    double dt = time / nsteps;

    State cur = s;
    std::vector<Complex> mid(cur.data().size()), midbar(cur.data().size());
    for (int step = 0; step < nsteps; ++step) {
        std::vector<Complex> next = cur.data();
        for (int it = 0; it < cfg.max_iters; ++it) {
            for (size_t i = 0; i < mid.size(); ++i) {
                mid[i] = 0.5 * (cur.data()[i] + next[i]);
                midbar[i] = std::conj(mid[i]);
            }
            TangentVector X = hamiltonian_vector_field(S, form, std::span<const Complex>(mid),
                                                       std::span<const Complex>(midbar));
            double delta = 0.0;
            for (size_t i = 0; i < next.size(); ++i) {
                Complex v = cur.data()[i] + dt * X.du[i];
                delta = std::max(delta, std::abs(v - next[i]));
                next[i] = v;
            }
            if (delta <= cfg.fixed_point_tol) break;
            if (it + 1 == cfg.max_iters)
                throw std::runtime_error("generator_flow: fixed point did not converge");
        }
        cur.data() = std::move(next);
        if (pair_norm(cur, 2.0) > 2.0 * entry_norm && entry_norm > 0.0)
            throw std::runtime_error("transform out of domain");
    }
    return cur;
}

State transform_state(const std::vector<Polynomial>& generators, const State& s,
                      TransformDirection direction, int theta, const FlowConfig& cfg) {
    State cur = s;
    if (direction == TransformDirection::forward) {
        for (auto it = generators.rbegin(); it != generators.rend(); ++it)
            cur = generator_flow(*it, cur, 1.0, theta, cfg);
    } else {
        for (const auto& S : generators) cur = generator_flow(S, cur, -1.0, theta, cfg);
    }
    return cur;
}

}  // namespace bnf
