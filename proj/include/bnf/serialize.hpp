#pragma once

#include <filesystem>
#include <string>

#include "bnf/normalform.hpp"
#include "bnf/pde.hpp"
#include "bnf/polynomial.hpp"

namespace bnf {

struct FileMeta {
    std::string version;
    std::string config_hash;
    uint64_t seed = 0;
    std::string config_json;  // full resolved config, embedded when non-empty
};

// JSON lines, one term per line in canonical key order:
// {"l":[[j,e],...],"k":[[j,e],...],"re":...,"im":...,"ledger":[[l0,k0,i0,re,im],...]|null,
//  "tilde":[re,im]|null}
// An optional first line {"_meta":{...}} carries version/config/seed.
void write_polynomial_jsonl(const Polynomial& f, const std::filesystem::path& path,
                            const FileMeta* meta = nullptr);
Polynomial read_polynomial_jsonl(const std::filesystem::path& path, const LatticeConfig& lat);

std::string polynomial_term_line(const MultiIndexPair& mi, const Coefficient& c);

void write_frequencies_csv(const FrequencyVector& fv, const std::filesystem::path& path,
                           const FileMeta* meta = nullptr);
FrequencyVector read_frequencies_csv(const std::filesystem::path& path, const LatticeConfig& lat);

// hamiltonian directory: P.jsonl + frequencies.csv + meta.json
void write_hamiltonian_dir(const Hamiltonian& H, const std::filesystem::path& dir,
                           const FileMeta& meta);
Hamiltonian read_hamiltonian_dir(const std::filesystem::path& dir);

// normal form directory: Z.jsonl, RN.jsonl, RT.jsonl, S_<r>.jsonl, diagnostics.json
void write_normalform_dir(const NormalFormResult& result, const LatticeConfig& lat,
                          const std::filesystem::path& dir, const FileMeta& meta);
NormalFormResult read_normalform_dir(const std::filesystem::path& dir, const LatticeConfig& lat);

}  // namespace bnf
