#include "bnf/config.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

namespace bnf {

namespace {

using json = nlohmann::json;

const json& require(const json& j, const std::string& parent, const char* key) {
    if (!j.contains(key)) throw ConfigError(parent + "." + key, "missing required field");
    return j.at(key);
}

double require_number(const json& j, const std::string& parent, const char* key) {
    const json& v = require(j, parent, key);
    if (!v.is_number()) throw ConfigError(parent + "." + key, "must be a number");
    return v.get<double>();
}

int require_int(const json& j, const std::string& parent, const char* key) {
    const json& v = require(j, parent, key);
    if (!v.is_number_integer()) throw ConfigError(parent + "." + key, "must be an integer");
    return v.get<int>();
}

}  // namespace

ExperimentConfig parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const std::exception& e) {
        throw ConfigError("(root)", std::string("invalid JSON: ") + e.what());
    }
    ExperimentConfig cfg;

    const json& lat = require(j, "", "lattice");
    int theta = require_int(lat, "lattice", "theta");
    int J = require_int(lat, "lattice", "J");
    bool include_zero = lat.value("include_zero", theta == 0);
    if (theta != 0 && theta != 1) throw ConfigError("lattice.theta", "must be 0 or 1");
    if (J < 1) throw ConfigError("lattice.J", "must be >= 1");
    if (theta == 1 && include_zero)
        throw ConfigError("lattice.include_zero", "mode 0 is not allowed when theta=1");
    cfg.lattice = LatticeConfig(theta, J, include_zero);

    const json& pot = require(j, "", "potential");
    cfg.potential_m = require_number(pot, "potential", "m");
    if (cfg.potential_m <= 0.5) throw ConfigError("potential.m", "must be > 1/2");
    cfg.potential_seed = (uint64_t)require_number(pot, "potential", "seed");

    const json& nl = require(j, "", "nonlinearity");
    const json& terms = require(nl, "nonlinearity", "terms");
    if (!terms.is_array()) throw ConfigError("nonlinearity.terms", "must be an array");
    size_t ti = 0;
    for (const auto& t : terms) {
        std::string path = "nonlinearity.terms[" + std::to_string(ti) + "]";
        int a = require_int(t, path, "a");
        int b = require_int(t, path, "b");
        if (a < 0 || b < 0 || a + b < 2)
            throw ConfigError(path, "needs a,b >= 0 and a+b >= 2");
        const json& xm = require(t, path, "x_modes");
        if (!xm.is_array()) throw ConfigError(path + ".x_modes", "must be an array");
        for (const auto& km : xm) {
            if (!km.is_array() || km.size() != 2 || !km.at(1).is_array() || km.at(1).size() != 2)
                throw ConfigError(path + ".x_modes", "entries must be [kappa,[re,im]]");
            NonlinearityTerm term;
            term.a = a;
            term.b = b;
            term.kappa = km.at(0).get<int>();
            term.c = Complex{km.at(1).at(0).get<double>(), km.at(1).at(1).get<double>()};
            cfg.nonlinearity.terms.push_back(term);
        }
        ++ti;
    }
    std::string defect = cfg.nonlinearity.reality_defect();
    if (!defect.empty()) throw ConfigError("nonlinearity.terms", defect);

    const json& nf = require(j, "", "nf");
    cfg.nf.gamma = require_number(nf, "nf", "gamma");
    cfg.nf.alpha = require_number(nf, "nf", "alpha");
    cfg.nf.N = require_int(nf, "nf", "N");
    cfg.nf.r_star = require_int(nf, "nf", "r_star");
    cfg.nf.p = require_number(nf, "nf", "p");
    cfg.rt_degree_cap = nf.value("rt_degree_cap", 0);
    if (cfg.nf.gamma <= 0.0) throw ConfigError("nf.gamma", "must be > 0");
    if (cfg.nf.alpha <= 1.0) throw ConfigError("nf.alpha", "must be > 1");
    if (cfg.nf.N < 1 || cfg.nf.N > J) throw ConfigError("nf.N", "must satisfy 1 <= N <= J");
    if (cfg.nf.r_star < 1) throw ConfigError("nf.r_star", "must be >= 1");

    if (j.contains("integrate")) {
        const json& integ = j.at("integrate");
        if (integ.contains("dt")) {
            cfg.integrate.dt = integ.at("dt").get<double>();
            cfg.integrate_dt_given = true;
            if (cfg.integrate.dt <= 0.0) throw ConfigError("integrate.dt", "must be > 0");
        }
        cfg.integrate_T = integ.value("T", 10.0);
        cfg.integrate.fixed_point_tol = integ.value("fixed_point_tol", 1e-13);
        cfg.integrate.sample_every = integ.value("sample_every", 1);
        std::string scheme = integ.value("scheme", "implicit_midpoint");
        if (scheme == "implicit_midpoint")
            cfg.integrate.scheme = Scheme::implicit_midpoint;
        else if (scheme == "rk4_reference")
            cfg.integrate.scheme = Scheme::rk4_reference;
        else
            throw ConfigError("integrate.scheme", "must be implicit_midpoint or rk4_reference");
    }

    if (j.contains("experiment")) {
        const json& ex = j.at("experiment");
        cfg.experiment.kind = ex.value("kind", "scan");
        if (cfg.experiment.kind != "scan" && cfg.experiment.kind != "measure" &&
            cfg.experiment.kind != "simulate" && cfg.experiment.kind != "scaling")
            throw ConfigError("experiment.kind", "must be scan|measure|simulate|scaling");
        if (ex.contains("ladder"))
            cfg.experiment.ladder = ex.at("ladder").get<std::vector<double>>();
        cfg.experiment.samples = ex.value("samples", 2000);
        cfg.experiment.n_states = ex.value("n_states", 50);
        cfg.experiment.epsilon = ex.value("epsilon", 1e-2);
        cfg.experiment.T_max = ex.value("T_max", 10.0);
        cfg.experiment.threshold_factor = ex.value("threshold_factor", 2.0);
        cfg.experiment.r = ex.value("r", cfg.nf.r_star + 3);
        if (ex.contains("Ns")) cfg.experiment.Ns = ex.at("Ns").get<std::vector<int>>();
        if (ex.contains("gammas"))
            cfg.experiment.gammas = ex.at("gammas").get<std::vector<double>>();
        cfg.experiment.seed = (uint64_t)ex.value("seed", 1.0);
        cfg.experiment.enum_budget = (size_t)ex.value("enum_budget", 5.0e6);
        if (cfg.experiment.enum_budget < 1)
            throw ConfigError("experiment.enum_budget", "must be >= 1");
    }
    if (cfg.experiment.Ns.empty()) cfg.experiment.Ns = {cfg.nf.N};
    if (cfg.experiment.gammas.empty()) cfg.experiment.gammas = {cfg.nf.gamma};

    cfg.raw = j.dump();  // canonical: nlohmann sorts object keys
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("(file)", "cannot open config " + path);
    std::ostringstream buf;
    buf << is.rdbuf();
    return parse_config(buf.str());
}

std::string config_hash(const ExperimentConfig& cfg) {
    uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : cfg.raw) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[32];
    snprintf(buf, sizeof(buf), "%016llx", (unsigned long long)h);
    return buf;
}

}  // namespace bnf
