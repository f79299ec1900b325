#pragma once

#include <cmath>

#include "bnf/lattice.hpp"
#include "bnf/state.hpp"

namespace bnf {

// c = sqrt(sum_j <j>^{-2}) over the finite lattice (slightly smaller than the
// full-lattice constant, which only tightens the tested bounds)
inline double lattice_c(const LatticeConfig& lat) {
    double acc = 0.0;
    for (int idx = 0; idx < lat.size(); ++idx)
        acc += std::pow(angle_bracket(lat.mode_at(idx)), -2.0);
    return std::sqrt(acc);
}

// ||X_f||_{p-1} <= 16 C^{r-2} r^{p+1} c^{r-1} ||u||_2^{r-2} ||u||_p
inline double vector_field_bound(double C, int r, double p, double c, double u2, double up) {
    return 16.0 * std::pow(C, double(r - 2)) * std::pow(double(r), p + 1.0) *
           std::pow(c, double(r - 1)) * std::pow(u2, double(r - 2)) * up;
}

// |{f, ||u||_p^2}| <= C^{r-2} 2^{p+1} p r^{p-1} c^{r-1} ||u||_p^2 ||u||_2^{r-2}
inline double sobolev_bracket_bound(double C, int r, double p, double c, double up, double u2) {
    return std::pow(C, double(r - 2)) * std::pow(2.0, p + 1.0) * p *
           std::pow(double(r), p - 1.0) * std::pow(c, double(r - 1)) * up * up *
           std::pow(u2, double(r - 2));
}

// normal-form bracket envelope:
// |{f, ||u||_p^2}| <= 20 r^{p+1} c^{r-1} C^{r-2} N ||G_{>N}u||_2 ||u||_2^{r-3} ||u||_p
inline double normal_form_bracket_bound(double C, int r, double p, double c, int N,
                                        double tail_u2, double u2, double up) {
    return 20.0 * std::pow(double(r), p + 1.0) * std::pow(c, double(r - 1)) *
           std::pow(C, double(r - 2)) * double(N) * tail_u2 * std::pow(u2, double(r - 3)) * up;
}

}  // namespace bnf
