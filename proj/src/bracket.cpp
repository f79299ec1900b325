#include "bnf/bracket.hpp"

#include <cmath>
#include <stdexcept>

namespace bnf {

namespace {

const Complex kI{0.0, 1.0};

// modes j where the product rule gives a nonzero contribution for the term
// pair (a, b): l^a_j K^b_j != 0 or k^a_j L^b_j != 0
std::vector<int> bracket_modes(const MultiIndexPair& a, const MultiIndexPair& b) {
    std::vector<int> modes;
    for (const auto& ea : a.entries()) {
        int j = ea.mode;
        if ((ea.le > 0 && b.k_of(j) > 0) || (ea.ke > 0 && b.l_of(j) > 0)) modes.push_back(j);
    }
    return modes;
}

Complex pow_int(Complex base, int e) {
    Complex acc{1.0, 0.0};
    while (e > 0) {
        acc *= base;
        --e;
    }
    return acc;
}

}  // namespace

double TangentVector::sobolev_norm(const LatticeConfig& lat, double p) const {
    double acc = 0.0;
    for (size_t idx = 0; idx < du.size(); ++idx) {
        double w = std::pow(angle_bracket(lat.mode_at(static_cast<int>(idx))), 2.0 * p);
        acc += w * (std::norm(du[idx]) + std::norm(dubar[idx]));
    }
    return std::sqrt(acc);
}

Polynomial poisson(const Polynomial& f, const Polynomial& g, SymplecticForm form,
                   int max_degree) {
    if (!(f.lattice() == g.lattice())) throw std::invalid_argument("poisson: lattice mismatch");
    Polynomial out(f.lattice());
    out.set_provenance("scalar");
    for (const auto& [fa, ca] : f.terms()) {
        int da = fa.degree();
        for (const auto& [gb, cb] : g.terms()) {
            if (da + gb.degree() - 2 > max_degree) continue;
            for (int j : bracket_modes(fa, gb)) {
                long long w = (long long)fa.l_of(j) * gb.k_of(j) -
                              (long long)fa.k_of(j) * gb.l_of(j);
                if (w == 0) continue;
                Complex coef = kI * double(sgn_theta(form.theta, j) * w) * ca.scalar * cb.scalar;
                out.add_term(bracket_monomial(fa, gb, j), coef);
            }
        }
    }
    return out;
}

Polynomial poisson_with_generator(const Polynomial& f, const Polynomial& S, int max_degree) {
    if (!(f.lattice() == S.lattice()))
        throw std::invalid_argument("poisson_with_generator: lattice mismatch");
    if (f.lattice().theta != 0)
        throw std::invalid_argument("poisson_with_generator: ledger propagation is theta=0 only");
    for (const auto& [mi, c] : f.terms())
        if (!c.ledger) throw std::runtime_error("poisson_with_generator: missing ledger");

    // raw entries accumulate per output term; canonicalize amortized and once
    // more at the end
    std::map<MultiIndexPair, std::vector<LedgerEntry>> acc;
    auto push = [&](const MultiIndexPair& target, LedgerEntry&& e) {
        auto& bucket = acc[target];
        bucket.push_back(std::move(e));
        if (bucket.size() >= 512) canonicalize_ledger(bucket);
    };

    for (const auto& [fa, ca] : f.terms()) {
        int da = fa.degree();
        for (const auto& [Sb, cb] : S.terms()) {
            if (da + Sb.degree() - 2 > max_degree) continue;
            int i2 = Sb.momentum();
            for (int j : bracket_modes(fa, Sb)) {
                MultiIndexPair target = bracket_monomial(fa, Sb, j);

                // first product-rule channel: d/du_j on f, d/dubar_j on S
                long long w1 = (long long)fa.l_of(j) * Sb.k_of(j);
                if (w1 != 0) {
                    Complex factor = kI * double(w1) * cb.scalar;
                    for (const auto& e : *ca.ledger) {
                        LedgerEntry ne;
                        ne.inner = factor * e.inner;
                        if (e.base.l_of(j) == 0) {
                            ne.base = e.base;
                            ne.i0 = e.i0;
                        } else {
                            ne.base = ledger_absorb(e.base, Sb, j);
                            ne.i0 = e.i0 + 2 * i2;
                        }
                        push(target, std::move(ne));
                    }
                }
                // second channel: d/dubar_j on f, d/du_j on S
                long long w2 = (long long)fa.k_of(j) * Sb.l_of(j);
                if (w2 != 0) {
                    Complex factor = -kI * double(w2) * cb.scalar;
                    for (const auto& e : *ca.ledger) {
                        LedgerEntry ne;
                        ne.inner = factor * e.inner;
                        if (e.base.k_of(j) < fa.k_of(j)) {
                            ne.base = e.base;
                            ne.i0 = e.i0;
                        } else {
                            ne.base = ledger_absorb(e.base, Sb, j);
                            ne.i0 = e.i0 + 2 * i2;
                        }
                        push(target, std::move(ne));
                    }
                }
            }
        }
    }

    Polynomial out(f.lattice());
    out.set_provenance("ledger");
    for (auto& [target, entries] : acc) {
        canonicalize_ledger(entries);
        if (entries.empty()) continue;
        Coefficient contrib;
        contrib.scalar = ledger_scalar(entries);
        contrib.ledger = std::move(entries);
        out.add_term(target, contrib);
    }
    return out;
}

TangentVector hamiltonian_vector_field(const Polynomial& f, SymplecticForm form,
                                       std::span<const Complex> u, std::span<const Complex> ubar) {
    const LatticeConfig& lat = f.lattice();
    TangentVector X;
    X.du.assign(static_cast<size_t>(lat.size()), Complex{0.0, 0.0});
    X.dubar.assign(static_cast<size_t>(lat.size()), Complex{0.0, 0.0});

    std::vector<Complex> factors;
    for (const auto& [mi, c] : f.terms()) {
        const auto& es = mi.entries();
        factors.resize(es.size());
        for (size_t n = 0; n < es.size(); ++n) {
            size_t idx = static_cast<size_t>(lat.index_of(es[n].mode));
            factors[n] = pow_int(u[idx], es[n].le) * pow_int(ubar[idx], es[n].ke);
        }
        for (size_t n = 0; n < es.size(); ++n) {
            size_t idx = static_cast<size_t>(lat.index_of(es[n].mode));
            Complex rest{1.0, 0.0};
            for (size_t m = 0; m < es.size(); ++m)
                if (m != n) rest *= factors[m];
            if (es[n].le > 0) {
                // df/du_j = l_j u_j^{l_j-1} ubar_j^{k_j} * rest
                Complex dfu = double(es[n].le) * pow_int(u[idx], es[n].le - 1) *
                              pow_int(ubar[idx], es[n].ke) * rest * c.scalar;
                X.dubar[idx] += kI * double(sgn_theta(form.theta, es[n].mode)) * dfu;
            }
            if (es[n].ke > 0) {
                Complex dfub = double(es[n].ke) * pow_int(u[idx], es[n].le) *
                               pow_int(ubar[idx], es[n].ke - 1) * rest * c.scalar;
                X.du[idx] += -kI * double(sgn_theta(form.theta, es[n].mode)) * dfub;
            }
        }
    }
    return X;
}

TangentVector hamiltonian_vector_field(const Polynomial& f, SymplecticForm form, const State& s) {
    std::vector<Complex> ubar(s.data().size());
    for (size_t i = 0; i < ubar.size(); ++i) ubar[i] = std::conj(s.data()[i]);
    return hamiltonian_vector_field(f, form, std::span<const Complex>(s.data()),
                                    std::span<const Complex>(ubar));
}

Polynomial lie_series(const Polynomial& f, const Polynomial& S, SymplecticForm form,
                      int max_degree) {
    if (!S.empty() && S.min_degree() <= 2)
        throw std::runtime_error("lie_series: non-ascending generator");
    Polynomial total = f.degree_slice(0, max_degree);
    if (S.empty()) return total;

    bool structured_path = (form.theta == 0);
    if (structured_path)
        for (const auto& [mi, c] : f.terms())
            if (!c.ledger) structured_path = false;

    // pullback by the time-1 flow of S: f_(nu) = (1/nu) {S, f_(nu-1)}.
    // With the bracket sign pinned to the {H_0, S} anchor this is the
    // orientation under which {H_0, S} + Z = g cancels the normalized degree.
    Polynomial current = total;
    for (int nu = 1; !current.empty(); ++nu) {
        Polynomial next = structured_path ? poisson_with_generator(current, S, max_degree)
                                          : poisson(current, S, form, max_degree);
        next.scale(-1.0 / double(nu));
        if (next.empty()) break;
        total.add(next);
        current = std::move(next);
    }
    if (form.theta == 1) total.refresh_tilde();
    return total;
}

Polynomial bracket_with_diagonal_quadratic(const Polynomial& f,
                                           const std::vector<double>& mode_weights,
                                           SymplecticForm form) {
    const LatticeConfig& lat = f.lattice();
    if (mode_weights.size() != static_cast<size_t>(lat.size()))
        throw std::invalid_argument("bracket_with_diagonal_quadratic: weight size mismatch");
    Polynomial out(lat);
    out.set_provenance(f.provenance());
    for (const auto& [mi, c] : f.terms()) {
        double lam = 0.0;
        for (const auto& e : mi.entries())
            lam += sgn_theta(form.theta, e.mode) * double(e.le - e.ke) *
                   mode_weights[static_cast<size_t>(lat.index_of(e.mode))];
        if (lam == 0.0) continue;
        Complex factor = kI * lam;
        Coefficient nc;
        nc.scalar = factor * c.scalar;
        if (c.ledger) {
            nc.ledger.emplace();
            for (const auto& e : *c.ledger) {
                LedgerEntry ne = e;
                ne.inner *= factor;
                nc.ledger->push_back(ne);
            }
        }
        if (c.tilde) nc.tilde = factor * (*c.tilde);
        out.add_term(mi, nc);
    }
    return out;
}

Polynomial bracket_with_sobolev_sq(const Polynomial& f, double p, SymplecticForm form) {
    const LatticeConfig& lat = f.lattice();
    std::vector<double> w(static_cast<size_t>(lat.size()));
    for (int idx = 0; idx < lat.size(); ++idx)
        w[static_cast<size_t>(idx)] = std::pow(angle_bracket(lat.mode_at(idx)), 2.0 * p);
    return bracket_with_diagonal_quadratic(f, w, form);
}

}  // namespace bnf
