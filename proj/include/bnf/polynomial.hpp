#pragma once

#include <complex>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "bnf/coefficient.hpp"
#include "bnf/lattice.hpp"
#include "bnf/multi_index.hpp"
#include "bnf/state.hpp"

namespace bnf {

struct SemiBoundViolation {
    MultiIndexPair term;
    double measured = 0.0;
    double bound = 0.0;
    double margin() const { return bound - measured; }
};

struct SemiBoundReport {
    bool passed = true;
    double min_margin = 0.0;           // over all terms; 0 for the empty polynomial
    double smallest_constant = 0.0;    // smallest C making the bound hold at this beta
    std::vector<SemiBoundViolation> violations;
};

// Sparse polynomial in (u, ubar) over a fixed lattice, graded by degree and
// momentum. Terms are kept in canonical key order; zero coefficients are
// never stored.
class Polynomial {
public:
    using TermMap = std::map<MultiIndexPair, Coefficient>;

    Polynomial() = default;
    explicit Polynomial(const LatticeConfig& lat) : lat_(lat) {}

    const LatticeConfig& lattice() const { return lat_; }
    const TermMap& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }

    const std::string& provenance() const { return provenance_; }
    void set_provenance(std::string p) { provenance_ = std::move(p); }

    int min_degree() const;
    int max_degree() const;

    void add_term(const MultiIndexPair& mi, Complex c);
    void add_term(const MultiIndexPair& mi, const Coefficient& coef);
    void add(const Polynomial& other);
    void subtract(const Polynomial& other);
    void scale(double a);           // keeps coefficient structure
    void scale_complex(Complex a);  // drops ledger/tilde unless a is real

    Complex coefficient(const MultiIndexPair& mi) const;

    Polynomial homogeneous_part(int degree) const;
    Polynomial degree_slice(int lo, int hi) const;  // inclusive

    // evaluation with independent u, ubar arguments (0^0 = 1 convention)
    Complex eval(std::span<const Complex> u, std::span<const Complex> ubar) const;
    // real-slice evaluation, ubar = conj(u)
    Complex eval(const State& s) const;

    // true iff conj(f^i_{lk}) matches f^{-i}_{kl} within tol on every term
    bool conj_symmetry_check(double tol) const;
    double conj_symmetry_defect() const;

    // recompute tilde = scalar / prod <j>^{(l_j+k_j)/2} on every term
    void refresh_tilde();

    friend Polynomial operator+(Polynomial a, const Polynomial& b) {
        a.add(b);
        return a;
    }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) {
        a.subtract(b);
        return a;
    }

private:
    LatticeConfig lat_;
    TermMap terms_;
    std::string provenance_ = "scalar";
};

// Truncations: keep terms with at most 2 exponent units on modes |j| > N and
// momentum |i| <= N; gamma_gt2 is the exact complement. Both preserve
// ledger/tilde structure.
Polynomial gamma_le2(const Polynomial& f, int N);
Polynomial gamma_gt2(const Polynomial& f, int N);

// Structured-coefficient envelope check: per degree-t, momentum-i term the
// measured size (ledger mode: sum |inner| * max{<i0>, <i0-2i>}; factored
// mode: |tilde|) must not exceed C^{t-2} / <i>^beta.
SemiBoundReport semi_bound_check(const Polynomial& f, double beta, double C);

// prod_j <j>^{(l_j+k_j)/2}
double tilde_factor(const MultiIndexPair& mi);

}  // namespace bnf
