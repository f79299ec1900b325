#pragma once

#include <complex>
#include <string>
#include <vector>

#include "bnf/frequencies.hpp"
#include "bnf/polynomial.hpp"
#include "bnf/spectrum.hpp"

namespace bnf {

// One monomial of F(x, psi, psibar) = sum c * e^{i kappa x} psi^a psibar^b.
struct NonlinearityTerm {
    int a = 0;
    int b = 0;
    int kappa = 0;
    Complex c{0.0, 0.0};
};

struct NonlinearitySpec {
    std::vector<NonlinearityTerm> terms;

    // reality: every (a, b, kappa, c) needs the partner (b, a, -kappa, conj c).
    // Returns an empty string when fine, else a description of the first
    // unpaired term.
    std::string reality_defect(double tol = 1e-12) const;

    int max_degree() const;
    int max_x_mode() const;
};

struct Hamiltonian {
    int theta = 0;
    FrequencyVector H0;
    Polynomial P;
};

struct BuildReport {
    size_t dropped_monomials = 0;   // generated modes outside |j| <= J
    size_t dropped_quadratic = 0;   // degree <= 2 output (feeds the linear part only)
};

// Fourier-side Hamiltonian of the first equation type: nonlinear density
// i (1/2 dF/dx + dF/dpsi psi_x), expanded over e^{ijx}/sqrt(2pi). Every
// coefficient is a linear form in momenta, stored as a one-entry ledger
// (l, 0, M(l,k)); the term momentum is -kappa.
Hamiltonian build_type1(const NonlinearitySpec& F, const Potential& pot, int J,
                        BuildReport* report = nullptr);

// Second equation type: nonlinear density F itself, with the mode rescaling
// u_j = psihat_j / |j|^{1/2}; coefficients factor as tilde * prod |t|^{(l+k)/2}.
Hamiltonian build_type2(const NonlinearitySpec& F, const Potential& pot, int J,
                        BuildReport* report = nullptr);

struct StructureReport {
    bool conj_symmetric = false;
    double conj_defect = 0.0;
    bool semi_bound_passed = false;
    double smallest_constant = 0.0;  // smallest C satisfying the envelope at this beta
    double max_imag_on_slice = 0.0;  // |Im H| over random unit states
    bool passed = false;
    std::vector<std::string> failures;
};

StructureReport verify_structure(const Hamiltonian& H, double beta, double C,
                                 uint64_t seed = 2024, int n_states = 100);

// ||psi||_{H^{p+1/2}}^2 of the function with Fourier coefficients
// psihat_j = |j|^{1/2} u_j (zero-mean lattice)
double psi_sobolev_norm_sq(const State& u, double p_plus_half);

}  // namespace bnf
