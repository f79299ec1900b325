#include "bnf/serialize.hpp"

#include <fstream>
#include <json.hpp>
#include <stdexcept>

namespace bnf {

namespace {

using json = nlohmann::ordered_json;

json exponent_list(const MultiIndexPair& mi, bool l_side) {
    json arr = json::array();
    for (const auto& e : mi.entries()) {
        int v = l_side ? e.le : e.ke;
        if (v > 0) arr.push_back(json::array({e.mode, v}));
    }
    return arr;
}

MultiIndexPair pair_from_lists(const json& l_list, const json& k_list) {
    std::vector<ModeExp> es;
    for (const auto& it : l_list) es.push_back(ModeExp{it.at(0).get<int>(), it.at(1).get<int>(), 0});
    for (const auto& it : k_list) es.push_back(ModeExp{it.at(0).get<int>(), 0, it.at(1).get<int>()});
    return MultiIndexPair::from_entries(std::move(es));
}

json meta_line(const FileMeta& meta) {
    json j;
    j["_meta"] = {{"version", meta.version}, {"config_hash", meta.config_hash}, {"seed", meta.seed}};
    return j;
}

}  // namespace

std::string polynomial_term_line(const MultiIndexPair& mi, const Coefficient& c) {
    json line;
    line["l"] = exponent_list(mi, true);
    line["k"] = exponent_list(mi, false);
    line["re"] = c.scalar.real();
    line["im"] = c.scalar.imag();
    if (c.ledger) {
        json entries = json::array();
        for (const auto& e : *c.ledger)
            entries.push_back(json::array({exponent_list(e.base, true),
                                           exponent_list(e.base, false), e.i0, e.inner.real(),
                                           e.inner.imag()}));
        line["ledger"] = entries;
    } else {
        line["ledger"] = nullptr;
    }
    if (c.tilde)
        line["tilde"] = json::array({c.tilde->real(), c.tilde->imag()});
    else
        line["tilde"] = nullptr;
    return line.dump();
}

void write_polynomial_jsonl(const Polynomial& f, const std::filesystem::path& path,
                            const FileMeta* meta) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path.string());
    if (meta) os << meta_line(*meta).dump() << "\n";
    for (const auto& [mi, c] : f.terms()) os << polynomial_term_line(mi, c) << "\n";
}

Polynomial read_polynomial_jsonl(const std::filesystem::path& path, const LatticeConfig& lat) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open " + path.string());
    Polynomial f(lat);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        json j = json::parse(line);
        if (j.contains("_meta")) continue;
        MultiIndexPair mi = pair_from_lists(j.at("l"), j.at("k"));
        Coefficient c;
        c.scalar = Complex{j.at("re").get<double>(), j.at("im").get<double>()};
        if (!j.at("ledger").is_null()) {
            c.ledger.emplace();
            for (const auto& ej : j.at("ledger")) {
                LedgerEntry e;
                e.base = pair_from_lists(ej.at(0), ej.at(1));
                e.i0 = ej.at(2).get<int>();
                e.inner = Complex{ej.at(3).get<double>(), ej.at(4).get<double>()};
                c.ledger->push_back(std::move(e));
            }
        }
        if (!j.at("tilde").is_null())
            c.tilde = Complex{j.at("tilde").at(0).get<double>(), j.at("tilde").at(1).get<double>()};
        f.add_term(mi, c);
    }
    return f;
}

void write_frequencies_csv(const FrequencyVector& fv, const std::filesystem::path& path,
                           const FileMeta* meta) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path.string());
    if (meta)
        os << "# version=" << meta->version << " config_hash=" << meta->config_hash
           << " seed=" << meta->seed << "\n";
    os << "j,omega\n";
    char buf[64];
    for (int idx = 0; idx < fv.lattice.size(); ++idx) {
        snprintf(buf, sizeof(buf), "%.17g", fv.omega[static_cast<size_t>(idx)]);
        os << fv.lattice.mode_at(idx) << "," << buf << "\n";
    }
}

FrequencyVector read_frequencies_csv(const std::filesystem::path& path, const LatticeConfig& lat) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open " + path.string());
    FrequencyVector fv(lat);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#' || line[0] == 'j') continue;
        size_t comma = line.find(',');
        if (comma == std::string::npos) continue;
        int j = std::stoi(line.substr(0, comma));
        fv.at(j) = std::stod(line.substr(comma + 1));
    }
    return fv;
}

void write_hamiltonian_dir(const Hamiltonian& H, const std::filesystem::path& dir,
                           const FileMeta& meta) {
    std::filesystem::create_directories(dir);
    write_polynomial_jsonl(H.P, dir / "P.jsonl", &meta);
    write_frequencies_csv(H.H0, dir / "frequencies.csv", &meta);
    nlohmann::ordered_json j;
    j["version"] = meta.version;
    j["config_hash"] = meta.config_hash;
    j["seed"] = meta.seed;
    j["theta"] = H.theta;
    j["J"] = H.P.lattice().J;
    j["include_zero"] = H.P.lattice().include_zero;
    j["provenance"] = H.P.provenance();
    if (!meta.config_json.empty()) j["config"] = nlohmann::json::parse(meta.config_json);
    std::ofstream os(dir / "meta.json");
    os << j.dump(2) << "\n";
}

Hamiltonian read_hamiltonian_dir(const std::filesystem::path& dir) {
    std::ifstream is(dir / "meta.json");
    if (!is) throw std::runtime_error("cannot open " + (dir / "meta.json").string());
    nlohmann::json j = nlohmann::json::parse(is);
    LatticeConfig lat(j.at("theta").get<int>(), j.at("J").get<int>(),
                      j.at("include_zero").get<bool>());
    Hamiltonian H;
    H.theta = lat.theta;
    H.P = read_polynomial_jsonl(dir / "P.jsonl", lat);
    H.P.set_provenance(j.value("provenance", "scalar"));
    H.H0 = read_frequencies_csv(dir / "frequencies.csv", lat);
    return H;
}

void write_normalform_dir(const NormalFormResult& result, const LatticeConfig& lat,
                          const std::filesystem::path& dir, const FileMeta& meta) {
    std::filesystem::create_directories(dir);
    write_polynomial_jsonl(result.Z, dir / "Z.jsonl", &meta);
    write_polynomial_jsonl(result.R_N, dir / "RN.jsonl", &meta);
    write_polynomial_jsonl(result.R_T, dir / "RT.jsonl", &meta);
    for (size_t s = 0; s < result.generators.size(); ++s)
        write_polynomial_jsonl(result.generators[s],
                               dir / ("S_" + std::to_string(s) + ".jsonl"), &meta);
    nlohmann::ordered_json diag;
    diag["version"] = meta.version;
    diag["config_hash"] = meta.config_hash;
    diag["seed"] = meta.seed;
    diag["theta"] = lat.theta;
    diag["J"] = lat.J;
    diag["include_zero"] = lat.include_zero;
    diag["stages"] = nlohmann::ordered_json::array();
    diag["ledger_structured"] = result.ledger_structured;
    diag["rt_degree_cap"] = result.rt_degree_cap;
    diag["n_generators"] = result.generators.size();
    if (!meta.config_json.empty()) diag["config"] = nlohmann::json::parse(meta.config_json);
    for (const auto& st : result.stages) {
        nlohmann::ordered_json sj;
        sj["stage"] = st.stage;
        sj["degree"] = st.degree;
        sj["hom_residual"] = st.hom_residual;
        sj["cancel_residual"] = st.cancel_residual;
        sj["g_terms"] = st.g_terms;
        sj["S_terms"] = st.S_terms;
        sj["Z_terms"] = st.Z_terms;
        sj["RN_terms"] = st.RN_terms;
        sj["structured"] = st.structured;
        sj["timing_ms"] = st.ms;  // varies run to run; not part of the payload
        diag["stages"].push_back(sj);
    }
    std::ofstream os(dir / "diagnostics.json");
    os << diag.dump(2) << "\n";
}

NormalFormResult read_normalform_dir(const std::filesystem::path& dir, const LatticeConfig& lat) {
    NormalFormResult result;
    result.Z = read_polynomial_jsonl(dir / "Z.jsonl", lat);
    result.R_N = read_polynomial_jsonl(dir / "RN.jsonl", lat);
    result.R_T = read_polynomial_jsonl(dir / "RT.jsonl", lat);
    for (size_t s = 0;; ++s) {
        auto path = dir / ("S_" + std::to_string(s) + ".jsonl");
        if (!std::filesystem::exists(path)) break;
        result.generators.push_back(read_polynomial_jsonl(path, lat));
    }
    std::ifstream is(dir / "diagnostics.json");
    if (is) {
        nlohmann::json diag = nlohmann::json::parse(is);
        result.ledger_structured = diag.value("ledger_structured", false);
        result.rt_degree_cap = diag.value("rt_degree_cap", 0);
        if (diag.contains("stages")) {
            for (const auto& sj : diag["stages"]) {
                StageDiagnostics st;
                st.stage = sj.value("stage", 0);
                st.degree = sj.value("degree", 0);
                st.hom_residual = sj.value("hom_residual", 0.0);
                st.cancel_residual = sj.value("cancel_residual", 0.0);
                result.stages.push_back(st);
            }
        }
    }
    return result;
}

}  // namespace bnf
