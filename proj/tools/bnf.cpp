// Batch driver: build Fourier-side Hamiltonians, run the iterative normal
// form, scan resonances, estimate resonant-potential measure, integrate, and
// emit plot-ready CSV/JSON. Exit codes: 0 ok, 1 runtime error, 2 config
// error, 3 check failure.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "bnf/config.hpp"
#include "bnf/dynamics.hpp"
#include "bnf/estimates.hpp"
#include "bnf/normalform.hpp"
#include "bnf/pde.hpp"
#include "bnf/serialize.hpp"
#include "bnf/spectrum.hpp"

using namespace bnf;
namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

int g_threads = 0;

FileMeta make_meta(const ExperimentConfig& cfg) {
    return FileMeta{kToolVersion, config_hash(cfg), cfg.potential_seed, cfg.raw};
}

std::string fmt(double v) {
    char buf[64];
    snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void csv_header(std::ofstream& os, const ExperimentConfig& cfg, uint64_t seed) {
    os << "# version=" << kToolVersion << " config_hash=" << config_hash(cfg) << " seed=" << seed
       << "\n";
}

Hamiltonian build_from_config(const ExperimentConfig& cfg, BuildReport* rep) {
    Potential pot =
        sample_potential(cfg.lattice.theta, cfg.potential_m, cfg.lattice.J, cfg.potential_seed);
    if (cfg.lattice.theta == 0) return build_type1(cfg.nonlinearity, pot, cfg.lattice.J, rep);
    return build_type2(cfg.nonlinearity, pot, cfg.lattice.J, rep);
}

IntegratorConfig integrator_for(const ExperimentConfig& cfg, const Hamiltonian& H) {
    IntegratorConfig icfg = cfg.integrate;
    if (!cfg.integrate_dt_given) icfg.dt = IntegratorConfig::default_dt(H.H0.max_abs());
    return icfg;
}

int cmd_build(const std::string& config_path, const std::string& out_dir) {
    ExperimentConfig cfg = load_config(config_path);
    BuildReport rep;
    Hamiltonian H = build_from_config(cfg, &rep);
    StructureReport sr = verify_structure(H, 2.0 * cfg.nf.p + 5.0, 1.0);
    write_hamiltonian_dir(H, out_dir, make_meta(cfg));

    ordered_json j;
    j["version"] = kToolVersion;
    j["config_hash"] = config_hash(cfg);
    j["seed"] = cfg.potential_seed;
    j["terms"] = H.P.term_count();
    j["min_degree"] = H.P.empty() ? 0 : H.P.min_degree();
    j["max_degree"] = H.P.max_degree();
    j["dropped_monomials"] = rep.dropped_monomials;
    j["dropped_quadratic"] = rep.dropped_quadratic;
    j["conj_symmetric"] = sr.conj_symmetric;
    j["conj_defect"] = sr.conj_defect;
    j["smallest_semibound_constant"] = sr.smallest_constant;
    j["max_imag_on_slice"] = sr.max_imag_on_slice;
    j["structure_passed"] = sr.passed;
    if (cfg.lattice.theta == 1) {
        // measured constants of the half-power rescaling norm sandwich
        double c1 = 1e300, c2 = 0.0;
        for (int idx = 0; idx < cfg.lattice.size(); ++idx) {
            State e(cfg.lattice);
            e[idx] = 1.0;
            double ratio = std::sqrt(psi_sobolev_norm_sq(e, cfg.nf.p + 0.5) /
                                     sobolev_norm_sq(e, cfg.nf.p));
            c1 = std::min(c1, ratio);
            c2 = std::max(c2, ratio);
        }
        j["psi_norm_equivalence"] = {c1, c2};
    }
    j["config"] = ordered_json::parse(cfg.raw);
    std::ofstream os(fs::path(out_dir) / "structure_report.json");
    os << j.dump(2) << "\n";
    std::cout << j.dump(2) << "\n";
    return sr.passed ? 0 : 3;
}

int cmd_normalform(const std::string& config_path, const std::string& ham_dir,
                   const std::string& out_dir) {
    ExperimentConfig cfg = load_config(config_path);
    Hamiltonian H = ham_dir.empty() ? build_from_config(cfg, nullptr)
                                    : read_hamiltonian_dir(ham_dir);
    BirkhoffOptions opts;
    opts.rt_degree_cap = cfg.rt_degree_cap;
    NormalFormResult nf = birkhoff_iterate(H.H0, H.P, cfg.nf, H.theta, opts);
    write_normalform_dir(nf, H.P.lattice(), out_dir, make_meta(cfg));

    if (!cfg.nf.n_window_ok(cfg.experiment.epsilon))
        std::cerr << "warning: N outside the advisory window for R=" << cfg.experiment.epsilon
                  << "\n";

    std::cout << "stage degree g_terms S_terms Z_terms RN_terms hom_residual cancel_residual\n";
    double worst = 0.0;
    for (const auto& st : nf.stages) {
        std::cout << st.stage << " " << st.degree << " " << st.g_terms << " " << st.S_terms << " "
                  << st.Z_terms << " " << st.RN_terms << " " << fmt(st.hom_residual) << " "
                  << fmt(st.cancel_residual) << "\n";
        worst = std::max({worst, st.hom_residual, st.cancel_residual});
    }
    std::cout << "ledger_structured=" << (nf.ledger_structured ? "true" : "false") << "\n";
    return worst > 1e-10 ? 3 : 0;
}

int cmd_scan(const std::string& config_path, const std::string& out_path) {
    ExperimentConfig cfg = load_config(config_path);
    Potential pot =
        sample_potential(cfg.lattice.theta, cfg.potential_m, cfg.lattice.J, cfg.potential_seed);
    FrequencyVector fv = frequencies(pot, cfg.lattice);
    EnumerationBudget budget{cfg.experiment.enum_budget};
    ScanReport rep =
        resonance_scan(fv, cfg.experiment.r, cfg.nf.N, cfg.nf, cfg.lattice.theta, budget);

    ordered_json j;
    j["version"] = kToolVersion;
    j["config_hash"] = config_hash(cfg);
    j["seed"] = cfg.potential_seed;
    j["scanned"] = rep.scanned;
    j["non_resonant"] = rep.non_resonant();
    j["config"] = ordered_json::parse(cfg.raw);
    j["violations"] = ordered_json::array();
    for (const auto& v : rep.violations) {
        ordered_json vj;
        vj["l"] = ordered_json::array();
        vj["k"] = ordered_json::array();
        for (const auto& e : v.index.entries()) {
            if (e.le > 0) vj["l"].push_back({e.mode, e.le});
            if (e.ke > 0) vj["k"].push_back({e.mode, e.ke});
        }
        vj["divisor"] = v.divisor;
        vj["threshold"] = v.threshold;
        j["violations"].push_back(vj);
    }
    std::ofstream os(out_path);
    os << j.dump(2) << "\n";
    std::cout << "scanned=" << rep.scanned << " violations=" << rep.violations.size() << "\n";
    return 0;
}

int cmd_measure(const std::string& config_path, const std::string& out_csv,
                const std::string& out_json) {
    ExperimentConfig cfg = load_config(config_path);
    std::ofstream os(out_csv);
    csv_header(os, cfg, cfg.experiment.seed);
    os << "theta,m,r,N,gamma,samples,seed,fraction,ci_lo,ci_hi,advisory_bound\n";

    ordered_json report;
    report["version"] = kToolVersion;
    report["config_hash"] = config_hash(cfg);
    report["seed"] = cfg.experiment.seed;
    report["config"] = ordered_json::parse(cfg.raw);
    report["cells"] = ordered_json::array();
    for (int N : cfg.experiment.Ns) {
        for (double gamma : cfg.experiment.gammas) {
            NormalFormParams params = cfg.nf;
            params.N = N;
            params.gamma = gamma;
            MeasureEstimate est = measure_estimate(
                cfg.lattice.theta, cfg.potential_m, cfg.experiment.r, N, params, cfg.lattice.J,
                cfg.experiment.samples, cfg.experiment.seed, g_threads,
                EnumerationBudget{cfg.experiment.enum_budget});
            os << cfg.lattice.theta << "," << fmt(cfg.potential_m) << "," << cfg.experiment.r
               << "," << N << "," << fmt(gamma) << "," << est.samples << ","
               << cfg.experiment.seed << "," << fmt(est.fraction) << "," << fmt(est.ci_lo) << ","
               << fmt(est.ci_hi) << "," << fmt(est.advisory_bound) << "\n";
            ordered_json cell;
            cell["N"] = N;
            cell["gamma"] = gamma;
            cell["fraction"] = est.fraction;
            cell["ci"] = {est.ci_lo, est.ci_hi};
            cell["advisory_bound"] = est.advisory_bound;
            report["cells"].push_back(cell);
        }
        // doubling ratios along the gamma grid at fixed N
        for (size_t gi = 0; gi + 1 < cfg.experiment.gammas.size(); ++gi) {
            double f1 = 0.0, f2 = 0.0;
            for (const auto& cell : report["cells"]) {
                if (cell["N"] != N) continue;
                if (cell["gamma"] == cfg.experiment.gammas[gi]) f1 = cell["fraction"];
                if (cell["gamma"] == cfg.experiment.gammas[gi + 1]) f2 = cell["fraction"];
            }
            if (f1 > 0.0) {
                ordered_json rr;
                rr["N"] = N;
                rr["gamma_lo"] = cfg.experiment.gammas[gi];
                rr["gamma_hi"] = cfg.experiment.gammas[gi + 1];
                rr["fraction_ratio"] = f2 / f1;
                report["gamma_ratios"].push_back(rr);
            }
        }
    }
    if (!out_json.empty()) {
        std::ofstream js(out_json);
        js << report.dump(2) << "\n";
    }
    std::cout << report.dump(2) << "\n";
    return 0;
}

int cmd_simulate(const std::string& config_path, const std::string& out_csv, bool per_mode) {
    ExperimentConfig cfg = load_config(config_path);
    Hamiltonian H = build_from_config(cfg, nullptr);
    IntegratorConfig icfg = integrator_for(cfg, H);
    State u0 = default_initial_state(H.P.lattice(), cfg.nf.p, cfg.experiment.epsilon,
                                     cfg.experiment.seed);
    Trajectory traj = integrate(H, u0, icfg, cfg.integrate_T, cfg.nf.p);

    std::ofstream os(out_csv);
    csv_header(os, cfg, cfg.experiment.seed);
    os << "t,norm_p,H,momentum";
    if (per_mode)
        for (int idx = 0; idx < H.P.lattice().size(); ++idx)
            os << ",abs_u_" << H.P.lattice().mode_at(idx);
    os << "\n";
    for (size_t i = 0; i < traj.times.size(); ++i) {
        const auto& d = traj.diagnostics[i];
        os << fmt(d.t) << "," << fmt(d.norm_p) << "," << fmt(d.energy) << "," << fmt(d.momentum);
        if (per_mode)
            for (int idx = 0; idx < H.P.lattice().size(); ++idx)
                os << "," << fmt(std::abs(traj.states[i][idx]));
        os << "\n";
    }
    double eps = cfg.experiment.epsilon;
    for (const auto& d : traj.diagnostics) {
        if (std::sqrt(2.0) * d.norm_p >= cfg.experiment.threshold_factor * eps) {
            std::cout << "escape_time=" << fmt(d.t) << "\n";
            return 0;
        }
    }
    std::cout << "survived T=" << fmt(cfg.integrate_T) << "\n";
    return 0;
}

int cmd_scaling(const std::string& config_path, const std::string& nf_dir,
                const std::string& out_csv, const std::string& out_json) {
    ExperimentConfig cfg = load_config(config_path);
    Hamiltonian H = build_from_config(cfg, nullptr);
    std::vector<double> ladder = cfg.experiment.ladder;
    if (ladder.empty()) ladder = {4e-1, 2e-1, 1e-1, 5e-2};

    DriftScaling original =
        drift_scaling({&H.P}, cfg.nf.p, H.theta, ladder, cfg.experiment.n_states,
                      cfg.experiment.seed, g_threads);

    ordered_json j;
    j["version"] = kToolVersion;
    j["config_hash"] = config_hash(cfg);
    j["seed"] = cfg.experiment.seed;
    j["config"] = ordered_json::parse(cfg.raw);
    j["original_slope"] = original.conserved ? ordered_json("conserved")
                                             : ordered_json(original.slope);

    std::ofstream os(out_csv);
    csv_header(os, cfg, cfg.experiment.seed);
    os << "hamiltonian,R,max_drift\n";
    for (size_t i = 0; i < ladder.size(); ++i)
        os << "original," << fmt(original.radii[i]) << "," << fmt(original.max_drift[i]) << "\n";

    if (!nf_dir.empty()) {
        NormalFormResult nf = read_normalform_dir(nf_dir, H.P.lattice());
        DriftScaling transformed =
            drift_scaling({&nf.Z, &nf.R_N, &nf.R_T}, cfg.nf.p, H.theta, ladder,
                          cfg.experiment.n_states, cfg.experiment.seed, g_threads);
        j["transformed_slope"] = transformed.conserved ? ordered_json("conserved")
                                                       : ordered_json(transformed.slope);
        for (size_t i = 0; i < ladder.size(); ++i)
            os << "transformed," << fmt(transformed.radii[i]) << ","
               << fmt(transformed.max_drift[i]) << "\n";
    }
    if (!out_json.empty()) {
        std::ofstream js(out_json);
        js << j.dump(2) << "\n";
    }
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_verify(const std::string& config_path, const std::string& ham_dir,
               const std::string& nf_dir) {
    ExperimentConfig cfg = load_config(config_path);
    Hamiltonian H = ham_dir.empty() ? build_from_config(cfg, nullptr)
                                    : read_hamiltonian_dir(ham_dir);
    bool ok = true;
    StructureReport sr = verify_structure(H, 2.0 * cfg.nf.p + 5.0, 1.0);
    std::cout << "hamiltonian structure: " << (sr.passed ? "pass" : "FAIL") << "\n";
    ok = ok && sr.passed;

    if (!nf_dir.empty()) {
        NormalFormResult nf = read_normalform_dir(nf_dir, H.P.lattice());
        bool z_ok = true;
        for (const auto& [mi, c] : nf.Z.terms())
            if (!is_resonant_term(H.H0, mi, cfg.nf, H.theta)) z_ok = false;
        bool rn_ok = true;
        for (const auto& [mi, c] : nf.R_N.terms())
            if (mi.tail_units(cfg.nf.N) <= 2 && std::abs(mi.momentum()) <= cfg.nf.N) rn_ok = false;
        bool rt_ok = nf.R_T.empty() || nf.R_T.min_degree() >= cfg.nf.r_star + 4;
        bool real_ok = nf.Z.conj_symmetry_check(1e-10) && nf.R_N.conj_symmetry_check(1e-10) &&
                       nf.R_T.conj_symmetry_check(1e-10);
        std::cout << "Z resonance certificate: " << (z_ok ? "pass" : "FAIL") << "\n";
        std::cout << "R_N truncation certificate: " << (rn_ok ? "pass" : "FAIL") << "\n";
        std::cout << "R_T degree certificate: " << (rt_ok ? "pass" : "FAIL") << "\n";
        std::cout << "reality: " << (real_ok ? "pass" : "FAIL") << "\n";
        ok = ok && z_ok && rn_ok && rt_ok && real_ok;
    }
    return ok ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Birkhoff normal form toolkit for lattice-truncated DNLS Hamiltonians"};
    app.require_subcommand(1);
    app.add_option("--threads", g_threads, "worker cap (0 = hardware)");

    std::string config_path, out = "out", ham_dir, nf_dir, out_csv, out_json;
    bool per_mode = false;

    auto* build = app.add_subcommand("build", "build the Fourier-side Hamiltonian");
    build->add_option("--config", config_path)->required();
    build->add_option("--out", out, "hamiltonian directory");

    auto* normalform = app.add_subcommand("normalform", "run the iterative normal form");
    normalform->add_option("--config", config_path)->required();
    normalform->add_option("--hamiltonian", ham_dir, "built hamiltonian directory (else rebuilt)");
    normalform->add_option("--out", out, "normal form directory");

    auto* scan = app.add_subcommand("scan", "resonance scan of the sampled frequencies");
    scan->add_option("--config", config_path)->required();
    scan->add_option("--out", out_json, "report JSON")->required();

    auto* measure = app.add_subcommand("measure", "Monte-Carlo resonant-potential fraction");
    measure->add_option("--config", config_path)->required();
    measure->add_option("--out-csv", out_csv, "CSV: theta,m,r,N,gamma,... per cell")->required();
    measure->add_option("--out-json", out_json, "regression report");

    auto* simulate = app.add_subcommand("simulate", "integrate from the default initial state");
    simulate->add_option("--config", config_path)->required();
    simulate->add_option("--out-csv", out_csv, "CSV: t,norm_p,H,momentum")->required();
    simulate->add_flag("--per-mode", per_mode, "append per-mode magnitudes");

    auto* scaling = app.add_subcommand("scaling", "drift ladder and fitted slopes");
    scaling->add_option("--config", config_path)->required();
    scaling->add_option("--normalform", nf_dir, "include the transformed Hamiltonian");
    scaling->add_option("--out-csv", out_csv, "CSV: hamiltonian,R,max_drift")->required();
    scaling->add_option("--out-json", out_json, "slope report");

    auto* verify = app.add_subcommand("verify", "structure + normal-form certificates");
    verify->add_option("--config", config_path)->required();
    verify->add_option("--hamiltonian", ham_dir);
    verify->add_option("--normalform", nf_dir);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*build) return cmd_build(config_path, out);
        if (*normalform) return cmd_normalform(config_path, ham_dir, out);
        if (*scan) return cmd_scan(config_path, out_json);
        if (*measure) return cmd_measure(config_path, out_csv, out_json);
        if (*simulate) return cmd_simulate(config_path, out_csv, per_mode);
        if (*scaling) return cmd_scaling(config_path, nf_dir, out_csv, out_json);
        if (*verify) return cmd_verify(config_path, ham_dir, nf_dir);
    } catch (const ConfigError& e) {
        std::cerr << "config error at " << e.field << ": " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
