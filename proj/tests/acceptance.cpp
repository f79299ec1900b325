// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Tolerances are pinned here, not configurable.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "bnf/bracket.hpp"
#include "bnf/dynamics.hpp"
#include "bnf/estimates.hpp"
#include "bnf/normalform.hpp"
#include "bnf/pde.hpp"
#include "bnf/random_gen.hpp"
#include "bnf/serialize.hpp"
#include "bnf/spectrum.hpp"

using namespace bnf;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            if (!detail.empty()) detail += "; ";
            detail += what;
        }
    }
};

std::string num(double v) {
    char buf[64];
    snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

MultiIndexPair mk(std::vector<ModeExp> es) { return MultiIndexPair::from_entries(std::move(es)); }

// ---------------------------------------------------------------- criterion 1
// Homological exactness: {H_0, S} + Z - Gamma^N_{<=2} g vanishes term by term
// to <= 1e-12 relative on 50 randomized cubic/quartic inputs, both forms.
Outcome criterion1() {
    Outcome out;
    double worst = 0.0;
    int count = 0;
    for (int theta : {0, 1}) {
        LatticeConfig lat(theta, 5, theta == 0);
        for (int rep = 0; rep < 25; ++rep) {
            FrequencyVector fv =
                frequencies(sample_potential(theta, 1.0, 5, 1000 + rep), lat);
            NormalFormParams params;
            params.gamma = 0.05;
            params.alpha = 2.0;
            params.N = 3 + rep % 3;
            RandomPolyOptions opts;
            opts.degree = 3 + rep % 2;
            opts.n_pairs = 10;
            opts.structured = true;
            Polynomial g = random_symmetric_poly(lat, opts, 5000 + 100 * theta + rep);
            Polynomial gle = gamma_le2(g, params.N);
            HomologicalSolution hom = solve_homological(fv, gle, params, theta);
            // independent residual: recompute the bracket and compare per term
            Polynomial residual = poisson(h0_polynomial(fv), hom.S, SymplecticForm{theta});
            residual.add(hom.Z);
            residual.subtract(gle);
            for (const auto& [mi, c] : residual.terms()) {
                double rel = std::abs(c.scalar) / (1.0 + std::abs(gle.coefficient(mi)));
                worst = std::max(worst, rel);
            }
            ++count;
        }
    }
    out.require(count == 50, "expected 50 inputs");
    out.require(worst <= 1e-12, "residual " + num(worst) + " > 1e-12");
    out.detail = "max residual " + num(worst) + " over 50 inputs";
    return out;
}

// ---------------------------------------------------------------- criterion 2
// Normal-form certificates: Z resonant per the threshold inequality, R_N
// terms carry >= 3 tail units, R_T starts at degree r*+4.
Outcome criterion2() {
    Outcome out;

    struct Case {
        int theta;
        int J;
        int N;
        int r_star;
        NonlinearitySpec F;
        uint64_t seed;
    };
    std::vector<Case> cases;
    {
        Case a;
        a.theta = 0;
        a.J = 4;
        a.N = 3;
        a.r_star = 2;
        a.F.terms.push_back({2, 1, 1, Complex{0.5, 0.2}});
        a.F.terms.push_back({1, 2, -1, Complex{0.5, -0.2}});
        a.F.terms.push_back({2, 2, 0, Complex{0.3, 0.0}});
        a.seed = 3;
        cases.push_back(a);

        Case b;
        b.theta = 1;
        b.J = 5;
        b.N = 4;
        b.r_star = 3;
        b.F.terms.push_back({2, 1, 0, Complex{0.6, 0.0}});
        b.F.terms.push_back({1, 2, 0, Complex{0.6, 0.0}});
        b.seed = 4;
        cases.push_back(b);
    }

    for (const auto& c : cases) {
        Potential pot = sample_potential(c.theta, 1.0, c.J, c.seed);
        Hamiltonian H = c.theta == 0 ? build_type1(c.F, pot, c.J) : build_type2(c.F, pot, c.J);
        NormalFormParams params;
        params.gamma = 0.02;
        params.alpha = 2.0;
        params.N = c.N;
        params.r_star = c.r_star;
        params.p = 3.0;
        NormalFormResult nf = birkhoff_iterate(H.H0, H.P, params, c.theta);
        std::string tag = "theta=" + std::to_string(c.theta) + ": ";

        out.require(!nf.Z.empty(), tag + "Z unexpectedly empty");
        for (const auto& [mi, coef] : nf.Z.terms()) {
            double divisor = small_divisor(H.H0, mi, c.theta);
            double threshold =
                params.gamma * double(M_lk(mi, params.N)) / std::pow(params.N, params.alpha);
            if (!(std::abs(divisor) <= threshold)) {
                out.require(false, tag + "Z-term misses the resonance certificate");
                break;
            }
        }
        out.require(!nf.R_N.empty(), tag + "R_N unexpectedly empty");
        for (const auto& [mi, coef] : nf.R_N.terms()) {
            if (mi.tail_units(params.N) < 3) {
                out.require(false, tag + "R_N term with <3 tail units");
                break;
            }
        }
        out.require(!nf.R_T.empty(), tag + "R_T unexpectedly empty");
        out.require(nf.R_T.empty() || nf.R_T.min_degree() >= params.r_star + 4,
                    tag + "R_T starts below r*+4");
        // R_N vanishes on head-supported states
        for (int n = 0; n < 5; ++n) {
            State s = random_state(H.P.lattice(), 3.0, 0.5, 1.0, 4000 + n);
            State head = project_head(s, params.N);
            double val = std::abs(nf.R_N.eval(head));
            out.require(val <= 1e-14, tag + "R_N nonzero on a head state");
        }
        for (const auto& st : nf.stages) {
            out.require(st.hom_residual <= 1e-12, tag + "stage residual > 1e-12");
            out.require(st.cancel_residual <= 1e-10, tag + "stage cancellation > 1e-10");
        }
    }
    if (out.pass) out.detail = "certificates hold on both equation types";
    return out;
}

// ---------------------------------------------------------------- criterion 3
// Drift-slope separation on the second-type example F = psi^3 psibar +
// psi psibar^3 at J = N = 6, r* = 2 with a non-resonant sampled potential.
// As stated the original-H slope is required to be 3 +- 0.2; the built P is
// quartic-homogeneous, so its exact slope is 4 and that sub-check cannot
// pass; it is asserted as written and reported with the measured values.
Outcome criterion3() {
    Outcome out;
    const int J = 6;
    NonlinearitySpec F;
    F.terms.push_back({3, 1, 0, Complex{1.0, 0.0}});
    F.terms.push_back({1, 3, 0, Complex{1.0, 0.0}});

    NormalFormParams params;
    params.gamma = 0.01;
    params.alpha = 2.0;
    params.N = J;
    params.r_star = 2;
    params.p = 3.0;

    Potential pot;
    bool found = false;
    for (uint64_t seed = 1; seed <= 60 && !found; ++seed) {
        pot = sample_potential(1, 1.0, J, seed);
        LatticeConfig lat(1, J, false);
        ScanReport scan =
            resonance_scan(frequencies(pot, lat), params.r_star + 3, params.N, params, 1);
        found = scan.non_resonant();
    }
    out.require(found, "no non-resonant potential found in 60 draws");
    if (!found) return out;

    Hamiltonian H = build_type2(F, pot, J);
    NormalFormResult nf = birkhoff_iterate(H.H0, H.P, params, 1);

    std::vector<double> ladder{0.2, 0.1, 0.05, 0.025};
    DriftScaling original = drift_scaling({&H.P}, params.p, 1, ladder, 50, 77);
    DriftScaling transformed =
        drift_scaling({&nf.Z, &nf.R_N, &nf.R_T}, params.p, 1, ladder, 50, 77);

    out.detail = "original slope " + num(original.slope) + ", transformed slope " +
                 (transformed.conserved ? std::string("conserved") : num(transformed.slope));
    out.require(!original.conserved && std::abs(original.slope - 3.0) <= 0.2,
                "original slope " + num(original.slope) + " outside 3 +- 0.2 (exact quartic "
                "homogeneity gives 4; see README)");
    out.require(!transformed.conserved &&
                    transformed.slope >= double(params.r_star) + 4.0 - 0.3,
                "transformed slope below r*+4-0.3");
    return out;
}

// ---------------------------------------------------------------- criterion 4
// Exact null brackets: {||u||_p^2, H_0} = 0 and the mirror-pair brackets
// vanish for w_0 while the w_1 counterpart does not. Symbolic and exact.
Outcome criterion4() {
    Outcome out;
    LatticeConfig lat0(0, 5, true);
    LatticeConfig lat1(1, 5, false);
    FrequencyVector fv = frequencies(sample_potential(0, 1.0, 5, 5), lat0);

    Polynomial h0 = h0_polynomial(fv);
    out.require(bracket_with_sobolev_sq(h0, 2.5, SymplecticForm{0}).empty(),
                "{||u||_p^2, H_0} != 0");

    for (int j = 1; j <= 5; ++j) {
        Polynomial pair0(lat0);
        pair0.add_term(mk({{j, 1, 0}, {-j, 0, 1}}), Complex{1.0, 0.0});
        pair0.add_term(mk({{j, 0, 1}, {-j, 1, 0}}), Complex{1.0, 0.0});
        out.require(bracket_with_sobolev_sq(pair0, 2.5, SymplecticForm{0}).empty(),
                    "w0 mirror-pair bracket != 0 at j=" + std::to_string(j));

        Polynomial pair1(lat1);
        pair1.add_term(mk({{j, 1, 0}, {-j, 0, 1}}), Complex{1.0, 0.0});
        pair1.add_term(mk({{j, 0, 1}, {-j, 1, 0}}), Complex{1.0, 0.0});
        out.require(!bracket_with_sobolev_sq(pair1, 2.5, SymplecticForm{1}).empty(),
                    "w1 mirror-pair bracket vanished at j=" + std::to_string(j));
    }
    if (out.pass) out.detail = "all null brackets exact; w1 counterpart nonzero";
    return out;
}

// ---------------------------------------------------------------- criterion 5
// Estimate spot-checks: the vector-field envelope (constant 16 C^{r-2} r^{p+1}
// c^{r-1}) and the sobolev-bracket envelope (2^{p+1} p r^{p-1} c^{r-1}) hold
// on 200 random (f, state) pairs each; zero violations allowed.
Outcome criterion5() {
    Outcome out;
    const double beta = 7.0;
    const double C = 1.0;
    int vf_checked = 0, sb_checked = 0;
    double vf_margin = 1e300, sb_margin = 1e300;
    for (int theta : {0, 1}) {
        LatticeConfig lat(theta, 6, theta == 0);
        double c = lattice_c(lat);
        for (int rep = 0; rep < 20; ++rep) {
            RandomPolyOptions opts;
            opts.degree = 3 + rep % 3;
            opts.n_pairs = 8;
            opts.structured = true;
            opts.beta = beta;
            opts.C = C;
            Polynomial f = random_symmetric_poly(lat, opts, 7000 + 100 * theta + rep);
            if (!semi_bound_check(f, beta, C).passed) {
                out.require(false, "generator violated its own envelope");
                continue;
            }
            int r = opts.degree;
            double p = 2.0 + 0.5 * (rep % 3);
            Polynomial bf = bracket_with_sobolev_sq(f, p, SymplecticForm{theta});
            for (int n = 0; n < 5; ++n) {
                State s = random_state(lat, p, 0.2 + 0.15 * n, 1.0 + 0.3 * (n % 3),
                                       8000 + 50 * rep + n);
                double u2 = std::sqrt(sobolev_norm_sq(s, 2.0));
                double up = std::sqrt(sobolev_norm_sq(s, p));

                TangentVector X = hamiltonian_vector_field(f, SymplecticForm{theta}, s);
                double lhs_vf = X.sobolev_norm(lat, p - 1.0);
                double rhs_vf = vector_field_bound(C, r, p, c, u2, up);
                vf_margin = std::min(vf_margin, rhs_vf - lhs_vf);
                if (lhs_vf > rhs_vf) out.require(false, "vector-field bound violated");
                ++vf_checked;

                double lhs_sb = std::abs(bf.eval(s));
                double rhs_sb = sobolev_bracket_bound(C, r, p, c, up, u2);
                sb_margin = std::min(sb_margin, rhs_sb - lhs_sb);
                if (lhs_sb > rhs_sb) out.require(false, "sobolev-bracket bound violated");
                ++sb_checked;
            }
        }
    }
    out.require(vf_checked == 200 && sb_checked == 200, "expected 200 pairs per bound");
    if (out.pass)
        out.detail = "0 violations in 200+200 pairs (min margins " + num(vf_margin) + ", " +
                     num(sb_margin) + ")";
    return out;
}

// ---------------------------------------------------------------- criterion 6
// Measure scaling: the resonant fraction doubles (ratio 2 +- 0.5) per gamma
// doubling and is nonincreasing in N within the 95% interval.
Outcome criterion6() {
    Outcome out;
    const int J = 6, r = 3, samples = 2000;
    const uint64_t seed = 11;
    std::vector<int> Ns{3, 4, 5};
    std::vector<double> gammas{0.02, 0.04, 0.08};
    NormalFormParams params;
    params.alpha = 3.5;
    params.p = 3.0;

    double frac[3][3];
    double lo[3][3], hi[3][3];
    for (size_t ni = 0; ni < Ns.size(); ++ni) {
        for (size_t gi = 0; gi < gammas.size(); ++gi) {
            NormalFormParams cell = params;
            cell.N = Ns[ni];
            cell.gamma = gammas[gi];
            MeasureEstimate est =
                measure_estimate(1, 1.0, r, Ns[ni], cell, J, samples, seed);
            frac[ni][gi] = est.fraction;
            lo[ni][gi] = est.ci_lo;
            hi[ni][gi] = est.ci_hi;
        }
    }

    std::string ratios;
    for (size_t ni = 0; ni < Ns.size(); ++ni) {
        for (size_t gi = 0; gi + 1 < gammas.size(); ++gi) {
            if (frac[ni][gi] <= 0.0) {
                out.require(false, "empty cell at N=" + std::to_string(Ns[ni]));
                continue;
            }
            double ratio = frac[ni][gi + 1] / frac[ni][gi];
            if (!ratios.empty()) ratios += ",";
            ratios += num(ratio);
            out.require(std::abs(ratio - 2.0) <= 0.5,
                        "gamma-doubling ratio " + num(ratio) + " outside 2 +- 0.5 at N=" +
                            std::to_string(Ns[ni]));
        }
    }
    // nonincreasing in N within CI: lower bound at N may not exceed the upper
    // bound at the next N
    for (size_t gi = 0; gi < gammas.size(); ++gi) {
        for (size_t ni = 0; ni + 1 < Ns.size(); ++ni) {
            out.require(lo[ni + 1][gi] <= hi[ni][gi],
                        "fraction increased in N beyond CI at gamma=" + num(gammas[gi]));
        }
    }
    out.detail = "fractions N=3:" + num(frac[0][0]) + "/" + num(frac[0][1]) + "/" +
                 num(frac[0][2]) + " N=5:" + num(frac[2][0]) + "/" + num(frac[2][1]) + "/" +
                 num(frac[2][2]) + " ratios " + ratios;
    return out;
}

// ---------------------------------------------------------------- criterion 7
// Integrator order and conservation.
Outcome criterion7() {
    Outcome out;

    // linear flow vs closed form at t = 10
    {
        Potential pot = sample_potential(0, 1.0, 2, 3);
        LatticeConfig lat(0, 2, true);
        Hamiltonian H;
        H.theta = 0;
        H.H0 = frequencies(pot, lat);
        H.P = Polynomial(lat);
        State u0 = random_state(lat, 2.0, 0.7, 1.0, 21);
        IntegratorConfig cfg;
        cfg.dt = 1e-5;
        cfg.fixed_point_tol = 1e-15;
        cfg.sample_every = 1 << 30;
        Trajectory traj = integrate(H, u0, cfg, 10.0, 2.0);
        double err = 0.0;
        for (int idx = 0; idx < lat.size(); ++idx) {
            double phase = -H.H0.omega[size_t(idx)] * 10.0;
            Complex expect = u0[idx] * Complex{std::cos(phase), std::sin(phase)};
            err = std::max(err, std::abs(traj.states.back()[idx] - expect));
        }
        out.require(err <= 1e-8, "linear-flow error " + num(err) + " > 1e-8");
        out.detail = "linear error " + num(err);
    }

    // energy drift ratio >= 3.5 under dt halving (cubic test Hamiltonian)
    {
        NonlinearitySpec F;
        F.terms.push_back({2, 1, 1, Complex{0.4, 0.1}});
        F.terms.push_back({1, 2, -1, Complex{0.4, -0.1}});
        Hamiltonian H = build_type1(F, sample_potential(0, 1.0, 2, 7), 2);
        State u0 = random_state(H.P.lattice(), 2.0, 0.5, 1.0, 31);
        auto drift_at = [&](double dt) {
            IntegratorConfig cfg;
            cfg.dt = dt;
            cfg.fixed_point_tol = 1e-15;
            cfg.sample_every = 5;
            Trajectory traj = integrate(H, u0, cfg, 20.0, 2.0);
            double h0 = traj.diagnostics.front().energy;
            double worst = 0.0;
            for (const auto& d : traj.diagnostics)
                worst = std::max(worst, std::abs(d.energy - h0));
            return worst;
        };
        double e1 = drift_at(2e-2);
        double e2 = drift_at(1e-2);
        out.require(e1 / e2 >= 3.5, "energy drift ratio " + num(e1 / e2) + " < 3.5");
        out.detail += ", drift ratio " + num(e1 / e2);
    }

    // momentum functional conserved for x-independent F
    {
        NonlinearitySpec F;
        F.terms.push_back({2, 2, 0, Complex{1.0, 0.0}});
        Hamiltonian H = build_type1(F, sample_potential(0, 1.0, 3, 9), 3);
        State u0 = random_state(H.P.lattice(), 2.0, 0.6, 1.0, 41);
        IntegratorConfig cfg;
        cfg.dt = 1e-3;
        cfg.fixed_point_tol = 1e-14;
        cfg.sample_every = 100;
        Trajectory traj = integrate(H, u0, cfg, 10.0, 2.0);
        double m0 = traj.diagnostics.front().momentum;
        double worst = 0.0;
        for (const auto& d : traj.diagnostics) worst = std::max(worst, std::abs(d.momentum - m0));
        out.require(worst <= 1e-9, "momentum drift " + num(worst) + " > 1e-9");
        out.detail += ", momentum drift " + num(worst);
    }
    return out;
}

// ---------------------------------------------------------------- criterion 8
// Transform consistency: numeric H(Phi(s)) vs the polynomial decomposition
// with residual exponent >= r*+3.5 over a 3-rung ladder; round trip <= 1e-8.
Outcome criterion8() {
    Outcome out;
    NormalFormParams params;
    params.gamma = 0.02;
    params.alpha = 2.0;
    params.N = 4;
    params.r_star = 1;
    params.p = 3.0;

    NonlinearitySpec F;
    F.terms.push_back({2, 1, 0, Complex{0.8, 0.0}});
    F.terms.push_back({1, 2, 0, Complex{0.8, 0.0}});
    Potential pot = sample_potential(0, 1.0, 4, 11);
    Hamiltonian H = build_type1(F, pot, 4);
    const LatticeConfig& lat = H.P.lattice();
    NormalFormResult nf = birkhoff_iterate(H.H0, H.P, params, 0);

    Polynomial h0 = h0_polynomial(H.H0);
    Polynomial transformed = h0 + nf.Z + nf.R_N + nf.R_T;

    FlowConfig fc;
    fc.dt = 5e-4;
    fc.fixed_point_tol = 1e-15;
    std::vector<double> scales{2e-1, 1e-1, 5e-2};
    std::vector<double> errs;
    for (double scale : scales) {
        double worst = 0.0;
        for (int n = 0; n < 6; ++n) {
            State s = random_state(lat, params.p, scale, 2.0, 1200 + n);
            State mapped = transform_state(nf.generators, s, TransformDirection::forward, 0, fc);
            Complex lhs = h0.eval(mapped) + H.P.eval(mapped);
            Complex rhs = transformed.eval(s);
            worst = std::max(worst, std::abs(lhs - rhs));
        }
        errs.push_back(worst);
    }
    double fit = 0.0;
    for (size_t i = 0; i + 1 < errs.size(); ++i)
        fit += std::log(errs[i] / errs[i + 1]) / std::log(scales[i] / scales[i + 1]);
    fit /= double(errs.size() - 1);
    out.require(fit >= double(params.r_star) + 3.5,
                "residual exponent " + num(fit) + " < r*+3.5");
    out.detail = "residual exponent " + num(fit);

    // round trip at ||s||_p = 1e-2 with step 1e-3
    fc.dt = 1e-3;
    State s = random_state(lat, params.p, 1e-2, 2.0, 1300);
    State round =
        transform_state(nf.generators,
                        transform_state(nf.generators, s, TransformDirection::forward, 0, fc),
                        TransformDirection::inverse, 0, fc);
    double err = 0.0;
    for (int idx = 0; idx < s.size(); ++idx) err = std::max(err, std::abs(round[idx] - s[idx]));
    out.require(err <= 1e-8, "round trip " + num(err) + " > 1e-8");
    out.detail += ", round trip " + num(err);
    return out;
}

// ---------------------------------------------------------------- criterion 9
// Reality invariants on every constructed and transformed Hamiltonian.
Outcome criterion9() {
    Outcome out;
    struct Built {
        std::string name;
        Polynomial poly;
        FrequencyVector freqs;
    };
    std::vector<Built> items;

    {
        NonlinearitySpec F;
        F.terms.push_back({2, 1, 1, Complex{0.5, 0.2}});
        F.terms.push_back({1, 2, -1, Complex{0.5, -0.2}});
        F.terms.push_back({2, 2, 0, Complex{0.3, 0.0}});
        Hamiltonian H = build_type1(F, sample_potential(0, 1.0, 4, 13), 4);
        items.push_back({"type-1 P", H.P, H.H0});
        NormalFormParams params;
        params.gamma = 0.02;
        params.alpha = 2.0;
        params.N = 3;
        params.r_star = 2;
        params.p = 3.0;
        NormalFormResult nf = birkhoff_iterate(H.H0, H.P, params, 0);
        items.push_back({"type-1 transformed", nf.Z + nf.R_N + nf.R_T, H.H0});
    }
    {
        NonlinearitySpec F;
        F.terms.push_back({3, 1, 0, Complex{1.0, 0.0}});
        F.terms.push_back({1, 3, 0, Complex{1.0, 0.0}});
        Hamiltonian H = build_type2(F, sample_potential(1, 1.0, 4, 17), 4);
        items.push_back({"type-2 P", H.P, H.H0});
        NormalFormParams params;
        params.gamma = 0.02;
        params.alpha = 2.0;
        params.N = 4;
        params.r_star = 2;
        params.p = 3.0;
        NormalFormResult nf = birkhoff_iterate(H.H0, H.P, params, 1);
        items.push_back({"type-2 transformed", nf.Z + nf.R_N + nf.R_T, H.H0});
    }

    double worst = 0.0;
    for (const auto& item : items) {
        out.require(item.poly.conj_symmetry_check(1e-10), item.name + " fails conjugation law");
        Polynomial full = h0_polynomial(item.freqs) + item.poly;
        for (int n = 0; n < 100; ++n) {
            State s = random_state(item.poly.lattice(), 2.0, 0.4 + 0.003 * n, 1.1, 9000 + n);
            Complex v = full.eval(s);
            double rel = std::abs(v.imag()) / (1.0 + std::abs(v));
            worst = std::max(worst, rel);
        }
    }
    out.require(worst <= 1e-12, "imaginary part " + num(worst) + " > 1e-12");
    out.detail = "max relative imaginary part " + num(worst);
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    struct Entry {
        const char* name;
        Outcome (*fn)();
    };
    const Entry entries[] = {
        {"homological exactness", criterion1},
        {"normal-form certificates", criterion2},
        {"drift-slope separation", criterion3},
        {"exact null brackets", criterion4},
        {"estimate spot-checks", criterion5},
        {"measure scaling", criterion6},
        {"integrator order and conservation", criterion7},
        {"transform consistency", criterion8},
        {"reality invariants", criterion9},
    };
    const int n_entries = int(sizeof(entries) / sizeof(entries[0]));

    // optional argument: run a single criterion (1-based)
    int only = 0;
    if (argc > 1) {
        only = std::atoi(argv[1]);
        if (only < 1 || only > n_entries) {
            fprintf(stderr, "usage: %s [criterion 1..%d]\n", argv[0], n_entries);
            return 2;
        }
    }

    int failures = 0;
    for (int idx = 1; idx <= n_entries; ++idx) {
        if (only && idx != only) continue;
        const Entry& entry = entries[idx - 1];
        auto t0 = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = entry.fn();
        } catch (const std::exception& e) {
            out.pass = false;
            out.detail = std::string("exception: ") + e.what();
        }
        double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        printf("[%s] criterion %d: %s (%.1fs)%s%s\n", out.pass ? "PASS" : "FAIL", idx, entry.name,
               secs, out.detail.empty() ? "" : " -- ", out.detail.c_str());
        fflush(stdout);
        if (!out.pass) ++failures;
    }
    if (failures) printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
