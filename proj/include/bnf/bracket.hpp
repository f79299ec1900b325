#pragma once

#include <complex>
#include <limits>
#include <vector>

#include "bnf/polynomial.hpp"
#include "bnf/state.hpp"

namespace bnf {

struct SymplecticForm {
    int theta = 0;
};

struct TangentVector {
    std::vector<Complex> du;
    std::vector<Complex> dubar;

    double sobolev_norm(const LatticeConfig& lat, double p) const;
};

// {f, g}_{w_theta} = i sum_j sgn^theta(j) (df/du_j dg/dubar_j - df/dubar_j dg/du_j).
// Term pairs whose output degree exceeds max_degree are skipped entirely.
Polynomial poisson(const Polynomial& f, const Polynomial& g, SymplecticForm form,
                   int max_degree = std::numeric_limits<int>::max());

// Bracket of a ledger-carrying theta=0 polynomial with a homological-equation
// solution S (plain scalar coefficients). The output scalar equals
// poisson(f, S, w_0); ledger entries follow the stay/absorb map: an entry
// rides along unchanged when mode j's differentiated unit misses it, and is
// pushed to (l0 - e_j + L, k0 + K - e_j, i0 + 2 M(L,K)) when it is hit.
Polynomial poisson_with_generator(const Polynomial& f, const Polynomial& S,
                                  int max_degree = std::numeric_limits<int>::max());

// X_f = J_theta grad f at the state: du_j = -i sgn^theta(j) df/dubar_j,
// dubar_j = +i sgn^theta(j) df/du_j, on the slice ubar = conj(u).
TangentVector hamiltonian_vector_field(const Polynomial& f, SymplecticForm form, const State& s);
TangentVector hamiltonian_vector_field(const Polynomial& f, SymplecticForm form,
                                       std::span<const Complex> u, std::span<const Complex> ubar);

// sum_nu f_(nu) with f_(0) = f, f_(nu) = (1/nu) {f_(nu-1), S}; terms of
// degree > max_degree are discarded after every bracket step.
Polynomial lie_series(const Polynomial& f, const Polynomial& S, SymplecticForm form,
                      int max_degree);

// {f, ||u||_p^2}: per term i sum_j sgn^theta(j) (l_j - k_j) <j>^{2p}; the
// monomial is unchanged, so structure carries through entry-wise.
Polynomial bracket_with_sobolev_sq(const Polynomial& f, double p, SymplecticForm form);

// same closed form with generic real mode weights g_j in place of <j>^{2p}
Polynomial bracket_with_diagonal_quadratic(const Polynomial& f,
                                           const std::vector<double>& mode_weights,
                                           SymplecticForm form);

}  // namespace bnf
