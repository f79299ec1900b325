#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "bnf/dynamics.hpp"
#include "bnf/normalform.hpp"
#include "bnf/pde.hpp"

namespace bnf {

inline constexpr const char* kToolVersion = "0.1.0";

struct ConfigError : std::runtime_error {
    std::string field;
    ConfigError(std::string field_, const std::string& message)
        : std::runtime_error(field_ + ": " + message), field(std::move(field_)) {}
};

struct ExperimentSection {
    std::string kind = "scan";              // scan | measure | simulate | scaling
    std::vector<double> ladder;             // scaling radii
    int samples = 2000;                     // measure sample count
    int n_states = 50;                      // scaling states per rung
    double epsilon = 1e-2;                  // simulate initial norm
    double T_max = 10.0;                    // simulate horizon
    double threshold_factor = 2.0;
    int r = 3;                              // scan degree
    std::vector<int> Ns;                    // measure N grid (defaults to {nf.N})
    std::vector<double> gammas;             // measure gamma grid (defaults to {nf.gamma})
    uint64_t seed = 1;
    size_t enum_budget = 5'000'000;         // index-family enumeration cap
};

struct ExperimentConfig {
    LatticeConfig lattice;
    double potential_m = 1.0;
    uint64_t potential_seed = 1;
    NonlinearitySpec nonlinearity;
    NormalFormParams nf;
    int rt_degree_cap = 0;  // 0 = default (r_star + 4)
    IntegratorConfig integrate;
    bool integrate_dt_given = false;
    double integrate_T = 10.0;
    ExperimentSection experiment;
    std::string raw;  // canonical serialized form used for the hash
};

// Parse + validate a config document; throws ConfigError with the offending
// field path on schema violations.
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);

std::string config_hash(const ExperimentConfig& cfg);  // fnv1a-64 of the canonical dump

}  // namespace bnf
