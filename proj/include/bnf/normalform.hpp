#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bnf/bracket.hpp"
#include "bnf/frequencies.hpp"
#include "bnf/polynomial.hpp"

namespace bnf {

struct NormalFormParams {
    double gamma = 0.1;
    double alpha = 2.0;
    int N = 1;
    int r_star = 1;
    double p = 3.0;

    void validate() const;

    // advisory window for N given the experiment radius R; never enforced
    bool n_window_ok(double R) const;
};

// M_{l,k}: max of N and every |j| in the support
int M_lk(const MultiIndexPair& mi, int N);

// |<omega, I_theta(l-k)>| <= gamma M_{l,k} / N^alpha  (<= at the boundary)
bool is_resonant_term(const FrequencyVector& omega, const MultiIndexPair& mi,
                      const NormalFormParams& params, int theta);

// split f into (resonant, nonresonant); both inherit structure
std::pair<Polynomial, Polynomial> nf_projector(const Polynomial& f, const FrequencyVector& omega,
                                               const NormalFormParams& params, int theta);

// Solve {H_0, S} + Z = g for a homogeneous g that already passed gamma_le2:
// S = -g / (i <omega, I_theta(l-k)>) on nonresonant terms, Z = resonant part.
struct HomologicalSolution {
    Polynomial S;
    Polynomial Z;
    double residual = 0.0;  // max relative coefficient of {H_0,S} + Z - g
};
HomologicalSolution solve_homological(const FrequencyVector& omega, const Polynomial& g,
                                      const NormalFormParams& params, int theta);

struct StageDiagnostics {
    int stage = 0;
    int degree = 0;
    double hom_residual = 0.0;
    double cancel_residual = 0.0;  // leftover at the normalized degree after the transform
    size_t g_terms = 0;
    size_t S_terms = 0;
    size_t Z_terms = 0;
    size_t RN_terms = 0;
    bool structured = false;
    double ms = 0.0;
};

struct NormalFormResult {
    Polynomial Z;
    Polynomial R_N;
    Polynomial R_T;
    std::vector<Polynomial> generators;  // S^(0..r_star)
    std::vector<StageDiagnostics> stages;
    bool ledger_structured = false;  // ledgers carried through every stage (theta=0)
    int rt_degree_cap = 0;
};

struct BirkhoffOptions {
    // highest degree tracked in R_T; defaults to r_star + 4 when <= 0
    int rt_degree_cap = 0;
    // total ledger entries across all parts before the iteration drops to
    // scalar coefficients (recorded in diagnostics)
    size_t ledger_entry_budget = 300000;
};

// Iterative normal form: stage s = 0..r_star truncates the degree-(s+3) bulk
// with gamma_le2, solves the homological equation, and Lie-transforms the full
// Hamiltonian by the stage generator. Overflow beyond degree r_star+3 goes to
// R_T; the gamma_gt2 parts accumulate in R_N; resonant parts accumulate in Z.
NormalFormResult birkhoff_iterate(const FrequencyVector& h0_freqs, const Polynomial& P,
                                  const NormalFormParams& params, int theta,
                                  BirkhoffOptions opts = {});

enum class TransformDirection { forward, inverse };

struct FlowConfig {
    double dt = 1e-3;
    double fixed_point_tol = 1e-14;
    int max_iters = 200;
};

// Composition of the time-(+/-1) generator flows. forward applies the last
// stage first so that H(forward(s)) matches H_0 + Z + R_N + R_T;
// inverse undoes it exactly (up to integrator tolerance).
State transform_state(const std::vector<Polynomial>& generators, const State& s,
                      TransformDirection direction, int theta, const FlowConfig& cfg = {});

// time-t flow of a single generator under w_theta (implicit midpoint)
State generator_flow(const Polynomial& S, const State& s, double time, int theta,
                     const FlowConfig& cfg);

}  // namespace bnf
