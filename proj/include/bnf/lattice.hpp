#pragma once

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace bnf {

// Finite mode set {j : |j| <= J}, optionally without j = 0.
// theta selects the symplectic form: theta=1 inserts sgn(j) weights and
// requires a zero-free lattice.
struct LatticeConfig {
    int theta = 0;
    int J = 1;
    bool include_zero = true;

    LatticeConfig() = default;
    LatticeConfig(int theta_, int J_, bool include_zero_)
        : theta(theta_), J(J_), include_zero(include_zero_) {
        validate();
    }

    void validate() const {
        if (theta != 0 && theta != 1)
            throw std::invalid_argument("lattice: theta must be 0 or 1");
        if (J < 1) throw std::invalid_argument("lattice: J must be >= 1");
        if (theta == 1 && include_zero)
            throw std::invalid_argument("lattice: mode 0 is not allowed when theta=1");
    }

    int size() const { return include_zero ? 2 * J + 1 : 2 * J; }

    bool has_mode(int j) const {
        if (j == 0) return include_zero;
        return std::abs(j) <= J;
    }

    // dense index, modes ascending (-J ... J)
    int index_of(int j) const {
        if (!has_mode(j))
            throw std::out_of_range("lattice: mode " + std::to_string(j) + " not on lattice");
        if (include_zero) return j + J;
        return j < 0 ? j + J : j + J - 1;
    }

    int mode_at(int idx) const {
        if (idx < 0 || idx >= size()) throw std::out_of_range("lattice: bad index");
        if (include_zero) return idx - J;
        int j = idx - J;
        return j < 0 ? j : j + 1;
    }

    bool operator==(const LatticeConfig&) const = default;
};

// <j> = max(1, |j|)
inline double angle_bracket(int j) { return std::max(1, std::abs(j)); }

inline int sgn(int j) { return (j > 0) - (j < 0); }

// sgn^theta(j), with sgn^0 = 1
inline int sgn_theta(int theta, int j) { return theta == 0 ? 1 : sgn(j); }

}  // namespace bnf
