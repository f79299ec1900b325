#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "bnf/frequencies.hpp"
#include "bnf/lattice.hpp"
#include "bnf/multi_index.hpp"
#include "bnf/normalform.hpp"

namespace bnf {

// Sampled potential v_j in [-1/2, 1/2]; theta=0 is mirror-symmetric,
// theta=1 keeps v_j and v_{-j} independent and has no zero mode.
struct Potential {
    int theta = 0;
    double m = 1.0;
    std::map<int, double> v;
    uint64_t seed = 0;

    LatticeConfig lattice(int J, bool include_zero) const {
        return LatticeConfig(theta, J, include_zero && theta == 0);
    }
};

Potential sample_potential(int theta, double m, int J, uint64_t seed);

// theta=0: omega_j = -j^2 + v_j/<j>^m ; theta=1: omega_j = sgn(j)(-j^2 + v_j/|j|^m)
FrequencyVector frequencies(const Potential& pot, const LatticeConfig& lat);

struct EnumerationBudget {
    size_t max_emitted = 5'000'000;
};

// Visit every index pair of the non-resonance family O_{r,N}: degree between
// 3 and r, at most 2 tail units, and the theta-dependent head/tail predicate.
// Mirror pairs are canonicalized ((l,k) emitted, (k,l) skipped). Tail modes
// run over N < |j| <= min(J, 4 r N^2). Throws when the budget is exceeded.
void enumerate_O(int r, int N, int theta, int J,
                 const std::function<void(const MultiIndexPair&)>& sink,
                 EnumerationBudget budget = {});

std::vector<MultiIndexPair> collect_O(int r, int N, int theta, int J, EnumerationBudget budget = {});

// membership predicate checked independently of the enumeration order
bool in_O_set(const MultiIndexPair& mi, int r, int N, int theta);

struct ResonanceViolation {
    MultiIndexPair index;
    double divisor = 0.0;
    double threshold = 0.0;
};

struct ScanReport {
    size_t scanned = 0;
    std::vector<ResonanceViolation> violations;
    bool non_resonant() const { return violations.empty(); }
};

ScanReport resonance_scan(const FrequencyVector& omega, int r, int N,
                          const NormalFormParams& params, int theta,
                          EnumerationBudget budget = {});

struct MeasureEstimate {
    double fraction = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 0.0;
    int samples = 0;
    int bad = 0;
    double advisory_bound = 1.0;  // analytic measure envelope, logged only
};

// Monte-Carlo fraction of potentials whose frequency vector fails the
// r-degree scan, with a 95% Wilson interval. Reproducible per (seed, samples);
// sample i uses derive_seed(seed, i), so results are threading-independent.
MeasureEstimate measure_estimate(int theta, double m, int r, int N, const NormalFormParams& params,
                                 int J, int samples, uint64_t seed, int threads = 0,
                                 EnumerationBudget budget = {});

}  // namespace bnf
