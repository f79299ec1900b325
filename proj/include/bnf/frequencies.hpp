#pragma once

#include <cmath>
#include <vector>

#include "bnf/lattice.hpp"
#include "bnf/multi_index.hpp"
#include "bnf/polynomial.hpp"

namespace bnf {

// Linear frequencies omega_j, dense over the lattice.
struct FrequencyVector {
    LatticeConfig lattice;
    std::vector<double> omega;  // indexed like State

    FrequencyVector() = default;
    explicit FrequencyVector(const LatticeConfig& lat)
        : lattice(lat), omega(static_cast<size_t>(lat.size()), 0.0) {}

    double at(int j) const { return omega[static_cast<size_t>(lattice.index_of(j))]; }
    double& at(int j) { return omega[static_cast<size_t>(lattice.index_of(j))]; }

    double max_abs() const {
        double m = 0.0;
        for (double w : omega) m = std::max(m, std::abs(w));
        return m;
    }
};

// H_0 = sum_j omega_j |u_j|^2 as a degree-2 polynomial
inline Polynomial h0_polynomial(const FrequencyVector& freqs) {
    Polynomial h0(freqs.lattice);
    for (int idx = 0; idx < freqs.lattice.size(); ++idx) {
        int j = freqs.lattice.mode_at(idx);
        double w = freqs.omega[static_cast<size_t>(idx)];
        if (w == 0.0) continue;
        h0.add_term(MultiIndexPair::from_entries({{j, 1, 1}}), Complex{w, 0.0});
    }
    return h0;
}

// <omega, I_theta (l - k)> = sum_j omega_j sgn^theta(j) (l_j - k_j)
inline double small_divisor(const FrequencyVector& omega, const MultiIndexPair& mi, int theta) {
    double d = 0.0;
    for (const auto& e : mi.entries())
        d += omega.at(e.mode) * sgn_theta(theta, e.mode) * double(e.le - e.ke);
    return d;
}

}  // namespace bnf
