#pragma once

#include <cstdint>

#include "bnf/polynomial.hpp"
#include "bnf/rng.hpp"
#include "bnf/state.hpp"

namespace bnf {

struct RandomPolyOptions {
    int degree = 3;
    int n_pairs = 6;          // conjugate term pairs
    bool structured = false;  // ledger (theta=0) / tilde (theta=1) data
    double beta = 6.0;        // envelope exponent for structured mode
    double C = 1.0;           // envelope constant; structured coefficients are
                              // drawn strictly inside the bound
};

// Homogeneous polynomial with symmetric coefficients: conj(f^i_{lk}) =
// f^{-i}_{kl} holds exactly by construction. In structured mode the
// semi-bound at (beta, C) holds as well.
Polynomial random_symmetric_poly(const LatticeConfig& lat, RandomPolyOptions opts, uint64_t seed);

// random state with profile <j>^{-decay} and the given pair norm
State random_state(const LatticeConfig& lat, double p, double target_pair_norm, double decay,
                   uint64_t seed);

}  // namespace bnf
