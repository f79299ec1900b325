#include "bnf/pde.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "bnf/rng.hpp"

namespace bnf {

namespace {

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// all exponent vectors with `units` total weight over the lattice modes;
// entries use the le slot, momentum constrained to `target` when `pin` is set
void enumerate_exponents(const LatticeConfig& lat, int units, bool pin, int target,
                         const std::function<void(const std::vector<ModeExp>&)>& sink) {
    std::vector<ModeExp> acc;
    std::function<void(int, int, int)> rec = [&](int idx, int left, int partial) {
        if (left == 0) {
            if (!pin || partial == target) sink(acc);
            return;
        }
        if (idx == lat.size()) return;
        if (pin && std::abs((long long)target - partial) > (long long)left * lat.J) return;
        int j = lat.mode_at(idx);
        bool pushed = false;
        for (int e = 0; e <= left; ++e) {
            if (e == 1) {
                acc.push_back(ModeExp{j, 1, 0});
                pushed = true;
            } else if (e > 1) {
                acc.back().le = e;
            }
            rec(idx + 1, left - e, partial + e * j);
        }
        if (pushed) acc.pop_back();
    };
    rec(0, units, 0);
}

using MonomialFn = std::function<void(const std::vector<ModeExp>& l_entries,
                                      const std::vector<ModeExp>& k_entries,
                                      const MultiIndexPair& mi)>;

// enumerate u^l ubar^k with |l| = a, |k| = b and M(l,k) = -kappa; returns the
// number of l-sides whose k-momentum target is unreachable on this lattice
size_t enumerate_monomials(const LatticeConfig& lat, int a, int b, int kappa,
                           const MonomialFn& fn) {
    size_t dropped = 0;
    enumerate_exponents(lat, a, false, 0, [&](const std::vector<ModeExp>& l_entries) {
        int ml = 0;
        for (const auto& e : l_entries) ml += e.mode * e.le;
        int k_target = ml + kappa;  // forces M(l,k) = -kappa
        if (std::abs(k_target) > (long long)b * lat.J) {
            ++dropped;
            return;
        }
        enumerate_exponents(lat, b, true, k_target, [&](const std::vector<ModeExp>& k_raw) {
            std::vector<ModeExp> k_entries;
            k_entries.reserve(k_raw.size());
            for (const auto& e : k_raw) k_entries.push_back(ModeExp{e.mode, 0, e.le});
            std::vector<ModeExp> all = l_entries;
            all.insert(all.end(), k_entries.begin(), k_entries.end());
            fn(l_entries, k_entries, MultiIndexPair::from_entries(std::move(all)));
        });
    });
    return dropped;
}

std::map<std::tuple<int, int, int>, Complex> aggregate_terms(const NonlinearitySpec& F) {
    std::map<std::tuple<int, int, int>, Complex> agg;
    for (const auto& t : F.terms) agg[{t.a, t.b, t.kappa}] += t.c;
    return agg;
}

double multinomial(int a, const std::vector<ModeExp>& l_entries, int b,
                   const std::vector<ModeExp>& k_entries) {
    double f = factorial(a) * factorial(b);
    for (const auto& e : l_entries) f /= factorial(e.le);
    for (const auto& e : k_entries) f /= factorial(e.ke);
    return f;
}

}  // namespace

std::string NonlinearitySpec::reality_defect(double tol) const {
    std::map<std::tuple<int, int, int>, Complex> agg;
    for (const auto& t : terms) {
        if (t.a < 0 || t.b < 0 || t.a + t.b < 2) {
            std::ostringstream os;
            os << "term (a=" << t.a << ", b=" << t.b << ") must have a,b >= 0 and a+b >= 2";
            return os.str();
        }
        agg[{t.a, t.b, t.kappa}] += t.c;
    }
    for (const auto& [key, c] : agg) {
        auto [a, b, kappa] = key;
        auto it = agg.find({b, a, -kappa});
        Complex partner = it == agg.end() ? Complex{0.0, 0.0} : it->second;
        if (std::abs(std::conj(c) - partner) > tol * (1.0 + std::abs(c))) {
            std::ostringstream os;
            os << "unpaired term a=" << a << " b=" << b << " kappa=" << kappa
               << ": needs conjugate partner (a=" << b << ", b=" << a << ", kappa=" << -kappa
               << ")";
            return os.str();
        }
    }
    return {};
}

int NonlinearitySpec::max_degree() const {
    int d = 0;
    for (const auto& t : terms) d = std::max(d, t.a + t.b);
    return d;
}

int NonlinearitySpec::max_x_mode() const {
    int k = 0;
    for (const auto& t : terms) k = std::max(k, std::abs(t.kappa));
    return k;
}

Hamiltonian build_type1(const NonlinearitySpec& F, const Potential& pot, int J,
                        BuildReport* report) {
    if (pot.theta != 0) throw std::invalid_argument("build_type1: potential must be theta=0");
    std::string defect = F.reality_defect();
    if (!defect.empty()) throw std::invalid_argument("build_type1: " + defect);
    LatticeConfig lat(0, J, true);

    Hamiltonian H;
    H.theta = 0;
    H.H0 = frequencies(pot, lat);
    H.P = Polynomial(lat);
    H.P.set_provenance("ledger");
    BuildReport rep;

    for (const auto& [key, c0] : aggregate_terms(F)) {
        auto [a, b, kappa] = key;
        Complex c = c0;
        int r = a + b;
        if (r <= 2) {
            ++rep.dropped_quadratic;
            continue;
        }
        double norm_factor = std::pow(2.0 * M_PI, 1.0 - 0.5 * double(r));
        rep.dropped_monomials += enumerate_monomials(
            lat, a, b, kappa,
            [&](const std::vector<ModeExp>& l_entries, const std::vector<ModeExp>& k_entries,
                const MultiIndexPair& mi) {
                LedgerEntry entry;
                entry.base = MultiIndexPair::from_entries(std::vector<ModeExp>(l_entries));
                entry.i0 = mi.momentum();  // = -kappa
                entry.inner = -c * norm_factor * multinomial(a, l_entries, b, k_entries);
                Coefficient coef;
                coef.scalar = entry.inner * entry.weight();
                if (coef.scalar == Complex{0.0, 0.0}) return;  // weight vanished
                coef.ledger = std::vector<LedgerEntry>{entry};
                H.P.add_term(mi, coef);
            });
    }
    if (report) *report = rep;
    return H;
}

Hamiltonian build_type2(const NonlinearitySpec& F, const Potential& pot, int J,
                        BuildReport* report) {
    if (pot.theta != 1) throw std::invalid_argument("build_type2: potential must be theta=1");
    std::string defect = F.reality_defect();
    if (!defect.empty()) throw std::invalid_argument("build_type2: " + defect);
    LatticeConfig lat(1, J, false);

    Hamiltonian H;
    H.theta = 1;
    H.H0 = frequencies(pot, lat);
    H.P = Polynomial(lat);
    H.P.set_provenance("tilde");
    BuildReport rep;

    for (const auto& [key, c0] : aggregate_terms(F)) {
        auto [a, b, kappa] = key;
        Complex c = c0;
        int r = a + b;
        if (r <= 2) {
            ++rep.dropped_quadratic;
            continue;
        }
        double norm_factor = std::pow(2.0 * M_PI, 1.0 - 0.5 * double(r));
        rep.dropped_monomials += enumerate_monomials(
            lat, a, b, kappa,
            [&](const std::vector<ModeExp>& l_entries, const std::vector<ModeExp>& k_entries,
                const MultiIndexPair& mi) {
                Coefficient coef;
                coef.tilde = c * norm_factor * multinomial(a, l_entries, b, k_entries);
                coef.scalar = *coef.tilde * tilde_factor(mi);
                H.P.add_term(mi, coef);
            });
    }
    if (report) *report = rep;
    return H;
}

StructureReport verify_structure(const Hamiltonian& H, double beta, double C, uint64_t seed,
                                 int n_states) {
    StructureReport rep;
    rep.conj_defect = H.P.conj_symmetry_defect();
    rep.conj_symmetric = rep.conj_defect <= 1e-10;
    if (!rep.conj_symmetric) rep.failures.push_back("conjugation law violated");

    if (H.P.empty()) {
        rep.semi_bound_passed = true;
        rep.smallest_constant = 0.0;
    } else {
        try {
            SemiBoundReport sb = semi_bound_check(H.P, beta, C);
            rep.semi_bound_passed = sb.passed;
            rep.smallest_constant = sb.smallest_constant;
            if (!sb.passed) {
                std::ostringstream os;
                os << "semi-bound fails at C=" << C << " (needs C>=" << sb.smallest_constant
                   << ")";
                rep.failures.push_back(os.str());
            }
        } catch (const std::exception&) {
            rep.semi_bound_passed = false;
            rep.failures.push_back("unstructured coefficients");
        }
    }

    // real-slice reality of H_0 + P on random states
    Rng rng(seed);
    Polynomial h0 = h0_polynomial(H.H0);
    for (int s = 0; s < n_states; ++s) {
        State u(H.P.lattice());
        for (int idx = 0; idx < u.size(); ++idx)
            u[idx] = Complex{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
        double nrm = pair_norm(u, 2.0);
        if (nrm > 0.0) u.scale(0.5 / nrm);
        Complex val = h0.eval(u) + H.P.eval(u);
        double rel = std::abs(val.imag()) / (1.0 + std::abs(val));
        rep.max_imag_on_slice = std::max(rep.max_imag_on_slice, rel);
    }
    if (rep.max_imag_on_slice > 1e-12) rep.failures.push_back("imaginary part on real slice");
    rep.passed = rep.failures.empty();
    return rep;
}

double psi_sobolev_norm_sq(const State& u, double p_plus_half) {
    double acc = 0.0;
    for (int idx = 0; idx < u.size(); ++idx) {
        int j = u.lattice().mode_at(idx);
        acc += std::pow(angle_bracket(j), 2.0 * p_plus_half) * std::abs(double(j)) *
               std::norm(u[idx]);
    }
    return acc;
}

}  // namespace bnf
