#include "bnf/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bnf {

namespace {

Complex pow_int(Complex base, int e) {
    // 0^0 = 1 by convention
    Complex acc{1.0, 0.0};
    while (e > 0) {
        acc *= base;
        --e;
    }
    return acc;
}

void merge_coefficient(Coefficient& dst, const Coefficient& src) {
    dst.scalar += src.scalar;
    if (dst.ledger && src.ledger) {
        dst.ledger->insert(dst.ledger->end(), src.ledger->begin(), src.ledger->end());
        canonicalize_ledger(*dst.ledger);
    } else if (dst.ledger || src.ledger) {
        dst.ledger.reset();  // cannot merge structured with plain
    }
    if (dst.tilde && src.tilde) {
        *dst.tilde += *src.tilde;
    } else if (dst.tilde || src.tilde) {
        dst.tilde.reset();
    }
}

bool coefficient_is_zero(const Coefficient& c) {
    if (c.scalar != Complex{0.0, 0.0}) return false;
    if (c.ledger && !c.ledger->empty()) return false;
    return true;
}

}  // namespace

int Polynomial::min_degree() const {
    int d = 0;
    bool first = true;
    for (const auto& [mi, c] : terms_) {
        int t = mi.degree();
        if (first || t < d) d = t;
        first = false;
    }
    return first ? 0 : d;
}

int Polynomial::max_degree() const {
    int d = 0;
    for (const auto& [mi, c] : terms_) d = std::max(d, mi.degree());
    return d;
}

void Polynomial::add_term(const MultiIndexPair& mi, Complex c) {
    add_term(mi, Coefficient(c));
}

void Polynomial::add_term(const MultiIndexPair& mi, const Coefficient& coef) {
    if (!mi.on_lattice(lat_)) throw std::invalid_argument("polynomial: term off lattice");
    if (coef.ledger)
        for (const auto& e : *coef.ledger)
            if (!e.base.contained_in(mi))
                throw std::invalid_argument("polynomial: ledger entry exceeds its monomial");
    auto [it, inserted] = terms_.try_emplace(mi, coef);
    if (!inserted) merge_coefficient(it->second, coef);
    if (coefficient_is_zero(it->second)) terms_.erase(it);
}

void Polynomial::add(const Polynomial& other) {
    if (!(other.lat_ == lat_)) throw std::invalid_argument("polynomial: lattice mismatch");
    for (const auto& [mi, c] : other.terms_) add_term(mi, c);
}

void Polynomial::subtract(const Polynomial& other) {
    if (!(other.lat_ == lat_)) throw std::invalid_argument("polynomial: lattice mismatch");
    for (const auto& [mi, c] : other.terms_) {
        Coefficient neg = c;
        neg.scalar = -neg.scalar;
        if (neg.ledger)
            for (auto& e : *neg.ledger) e.inner = -e.inner;
        if (neg.tilde) *neg.tilde = -*neg.tilde;
        add_term(mi, neg);
    }
}

void Polynomial::scale(double a) {
    if (a == 0.0) {
        terms_.clear();
        return;
    }
    for (auto& [mi, c] : terms_) {
        c.scalar *= a;
        if (c.ledger)
            for (auto& e : *c.ledger) e.inner *= a;
        if (c.tilde) *c.tilde *= a;
    }
}

void Polynomial::scale_complex(Complex a) {
    if (a.imag() == 0.0) {
        scale(a.real());
        return;
    }
    // a non-real factor breaks the ledger/tilde conjugation law
    for (auto& [mi, c] : terms_) {
        c.scalar *= a;
        c.ledger.reset();
        c.tilde.reset();
    }
    provenance_ = "scalar(dropped: scale_complex)";
}

Complex Polynomial::coefficient(const MultiIndexPair& mi) const {
    auto it = terms_.find(mi);
    return it == terms_.end() ? Complex{0.0, 0.0} : it->second.scalar;
}

Polynomial Polynomial::homogeneous_part(int degree) const {
    Polynomial out(lat_);
    out.provenance_ = provenance_;
    for (const auto& [mi, c] : terms_)
        if (mi.degree() == degree) out.terms_.emplace(mi, c);
    return out;
}

Polynomial Polynomial::degree_slice(int lo, int hi) const {
    Polynomial out(lat_);
    out.provenance_ = provenance_;
    for (const auto& [mi, c] : terms_) {
        int d = mi.degree();
        if (d >= lo && d <= hi) out.terms_.emplace(mi, c);
    }
    return out;
}

Complex Polynomial::eval(std::span<const Complex> u, std::span<const Complex> ubar) const {
    Complex acc{0.0, 0.0};
    for (const auto& [mi, c] : terms_) {
        Complex mono{1.0, 0.0};
        for (const auto& e : mi.entries()) {
            size_t idx = static_cast<size_t>(lat_.index_of(e.mode));
            mono *= pow_int(u[idx], e.le) * pow_int(ubar[idx], e.ke);
        }
        acc += c.scalar * mono;
    }
    return acc;
}

Complex Polynomial::eval(const State& s) const {
    std::vector<Complex> ubar(s.data().size());
    for (size_t i = 0; i < ubar.size(); ++i) ubar[i] = std::conj(s.data()[i]);
    return eval(std::span<const Complex>(s.data()), std::span<const Complex>(ubar));
}

double Polynomial::conj_symmetry_defect() const {
    double worst = 0.0;
    for (const auto& [mi, c] : terms_) {
        Complex partner = coefficient(mi.mirror());
        double defect = std::abs(std::conj(c.scalar) - partner) / (1.0 + std::abs(c.scalar));
        worst = std::max(worst, defect);
    }
    return worst;
}

bool Polynomial::conj_symmetry_check(double tol) const { return conj_symmetry_defect() <= tol; }

void Polynomial::refresh_tilde() {
    for (auto& [mi, c] : terms_) c.tilde = c.scalar / tilde_factor(mi);
}

Polynomial gamma_le2(const Polynomial& f, int N) {
    if (N < 1) throw std::invalid_argument("gamma_le2: N must be >= 1");
    Polynomial out(f.lattice());
    out.set_provenance(f.provenance());
    for (const auto& [mi, c] : f.terms())
        if (mi.tail_units(N) <= 2 && std::abs(mi.momentum()) <= N) out.add_term(mi, c);
    return out;
}

Polynomial gamma_gt2(const Polynomial& f, int N) {
    if (N < 1) throw std::invalid_argument("gamma_gt2: N must be >= 1");
    Polynomial out(f.lattice());
    out.set_provenance(f.provenance());
    for (const auto& [mi, c] : f.terms())
        if (!(mi.tail_units(N) <= 2 && std::abs(mi.momentum()) <= N)) out.add_term(mi, c);
    return out;
}

double tilde_factor(const MultiIndexPair& mi) {
    double f = 1.0;
    for (const auto& e : mi.entries())
        f *= std::pow(angle_bracket(e.mode), 0.5 * double(e.le + e.ke));
    return f;
}

SemiBoundReport semi_bound_check(const Polynomial& f, double beta, double C) {
    SemiBoundReport report;
    report.min_margin = 0.0;
    bool first = true;
    for (const auto& [mi, c] : f.terms()) {
        if (!c.structured()) throw std::runtime_error("semi_bound_check: unstructured coefficients");
        int t = mi.degree();
        int i = mi.momentum();
        double measured = 0.0;
        if (c.ledger) {
            for (const auto& e : *c.ledger)
                measured += std::abs(e.inner) *
                            std::max(angle_bracket(e.i0), angle_bracket(e.i0 - 2 * i));
        } else {
            measured = std::abs(*c.tilde);
        }
        double envelope = std::pow(angle_bracket(i), -beta);
        double bound = std::pow(C, double(t - 2)) * envelope;
        double margin = bound - measured;
        if (first || margin < report.min_margin) report.min_margin = margin;
        first = false;
        if (measured > bound) {
            report.passed = false;
            report.violations.push_back({mi, measured, bound});
        }
        if (measured > 0.0 && t > 2) {
            double c_needed = std::pow(measured / envelope, 1.0 / double(t - 2));
            report.smallest_constant = std::max(report.smallest_constant, c_needed);
        }
    }
    return report;
}

}  // namespace bnf
