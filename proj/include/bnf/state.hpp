#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "bnf/lattice.hpp"

namespace bnf {

// Dense complex amplitude vector over the lattice modes.
class State {
public:
    State() = default;
    explicit State(const LatticeConfig& lat)
        : lat_(lat), u_(static_cast<size_t>(lat.size()), std::complex<double>{0.0, 0.0}) {}

    const LatticeConfig& lattice() const { return lat_; }
    int size() const { return static_cast<int>(u_.size()); }

    std::complex<double>& operator[](int idx) { return u_[static_cast<size_t>(idx)]; }
    const std::complex<double>& operator[](int idx) const { return u_[static_cast<size_t>(idx)]; }

    std::complex<double>& at_mode(int j) { return u_[static_cast<size_t>(lat_.index_of(j))]; }
    const std::complex<double>& at_mode(int j) const {
        return u_[static_cast<size_t>(lat_.index_of(j))];
    }

    std::vector<std::complex<double>>& data() { return u_; }
    const std::vector<std::complex<double>>& data() const { return u_; }

    void scale(double a) {
        for (auto& x : u_) x *= a;
    }

private:
    LatticeConfig lat_;
    std::vector<std::complex<double>> u_;
};

// ||u||_p^2 = sum <j>^{2p} |u_j|^2
inline double sobolev_norm_sq(const State& s, double p) {
    double acc = 0.0;
    for (int idx = 0; idx < s.size(); ++idx) {
        int j = s.lattice().mode_at(idx);
        acc += std::pow(angle_bracket(j), 2.0 * p) * std::norm(s[idx]);
    }
    return acc;
}

inline double sobolev_norm(const State& s, double p) { return std::sqrt(sobolev_norm_sq(s, p)); }

// ||(u, ubar)||_p on the real slice ubar = conj(u)
inline double pair_norm(const State& s, double p) { return std::sqrt(2.0 * sobolev_norm_sq(s, p)); }

inline State project_tail(const State& s, int N) {
    State out(s.lattice());
    for (int idx = 0; idx < s.size(); ++idx)
        if (std::abs(s.lattice().mode_at(idx)) > N) out[idx] = s[idx];
    return out;
}

inline State project_head(const State& s, int N) {
    State out(s.lattice());
    for (int idx = 0; idx < s.size(); ++idx)
        if (std::abs(s.lattice().mode_at(idx)) <= N) out[idx] = s[idx];
    return out;
}

}  // namespace bnf
