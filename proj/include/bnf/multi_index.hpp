#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "bnf/lattice.hpp"

namespace bnf {

// One lattice mode with its exponents in u (le) and ubar (ke).
struct ModeExp {
    int mode = 0;
    int le = 0;
    int ke = 0;
    auto operator<=>(const ModeExp&) const = default;
};

// Sparse exponent pair (l, k) for the monomial u^l ubar^k.
// Entries are sorted by mode and carry le + ke > 0; this canonical form is
// also the term ordering used everywhere (deterministic iteration).
class MultiIndexPair {
public:
    MultiIndexPair() = default;

    static MultiIndexPair from_entries(std::vector<ModeExp> entries) {
        std::sort(entries.begin(), entries.end(),
                  [](const ModeExp& a, const ModeExp& b) { return a.mode < b.mode; });
        std::vector<ModeExp> out;
        out.reserve(entries.size());
        for (const auto& e : entries) {
            if (e.le < 0 || e.ke < 0)
                throw std::invalid_argument("multi-index: negative exponent");
            if (e.le == 0 && e.ke == 0) continue;
            if (!out.empty() && out.back().mode == e.mode) {
                out.back().le += e.le;
                out.back().ke += e.ke;
            } else {
                out.push_back(e);
            }
        }
        MultiIndexPair mi;
        mi.entries_ = std::move(out);
        return mi;
    }

    const std::vector<ModeExp>& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }

    int degree() const {
        int d = 0;
        for (const auto& e : entries_) d += e.le + e.ke;
        return d;
    }

    // M(l,k) = sum_j j (l_j - k_j)
    int momentum() const {
        int m = 0;
        for (const auto& e : entries_) m += e.mode * (e.le - e.ke);
        return m;
    }

    // |Gamma_{>N}(l+k)|: exponent units sitting on modes |j| > N
    int tail_units(int N) const {
        int t = 0;
        for (const auto& e : entries_)
            if (std::abs(e.mode) > N) t += e.le + e.ke;
        return t;
    }

    int max_support_abs() const {
        int m = 0;
        for (const auto& e : entries_) m = std::max(m, std::abs(e.mode));
        return m;
    }

    int l_of(int j) const {
        const ModeExp* e = find(j);
        return e ? e->le : 0;
    }
    int k_of(int j) const {
        const ModeExp* e = find(j);
        return e ? e->ke : 0;
    }

    // (k, l)
    MultiIndexPair mirror() const {
        std::vector<ModeExp> es = entries_;
        for (auto& e : es) std::swap(e.le, e.ke);
        MultiIndexPair mi;
        mi.entries_ = std::move(es);
        return mi;
    }

    bool diagonal() const {
        for (const auto& e : entries_)
            if (e.le != e.ke) return false;
        return true;
    }

    // componentwise 0 <= this.l <= other.l and 0 <= this.k <= other.k
    bool contained_in(const MultiIndexPair& other) const {
        for (const auto& e : entries_)
            if (e.le > other.l_of(e.mode) || e.ke > other.k_of(e.mode)) return false;
        return true;
    }

    bool on_lattice(const LatticeConfig& lat) const {
        for (const auto& e : entries_)
            if (!lat.has_mode(e.mode)) return false;
        return true;
    }

    auto operator<=>(const MultiIndexPair&) const = default;

private:
    const ModeExp* find(int j) const {
        auto it = std::lower_bound(entries_.begin(), entries_.end(), j,
                                   [](const ModeExp& e, int m) { return e.mode < m; });
        if (it != entries_.end() && it->mode == j) return &*it;
        return nullptr;
    }

    std::vector<ModeExp> entries_;
};

// Monomial of the Poisson product rule: (l + L - e_j, k + K - e_j).
// Requires l_j + L_j >= 1 and k_j + K_j >= 1.
inline MultiIndexPair bracket_monomial(const MultiIndexPair& a, const MultiIndexPair& b, int j) {
    std::vector<ModeExp> es;
    es.reserve(a.entries().size() + b.entries().size() + 1);
    for (const auto& e : a.entries()) es.push_back(e);
    for (const auto& e : b.entries()) es.push_back(e);
    es.push_back(ModeExp{j, 0, 0});
    std::sort(es.begin(), es.end(),
              [](const ModeExp& x, const ModeExp& y) { return x.mode < y.mode; });
    std::vector<ModeExp> merged;
    for (const auto& e : es) {
        if (!merged.empty() && merged.back().mode == e.mode) {
            merged.back().le += e.le;
            merged.back().ke += e.ke;
        } else {
            merged.push_back(e);
        }
    }
    for (auto& e : merged) {
        if (e.mode == j) {
            e.le -= 1;
            e.ke -= 1;
            if (e.le < 0 || e.ke < 0)
                throw std::logic_error("bracket_monomial: mode not present on both sides");
        }
    }
    std::erase_if(merged, [](const ModeExp& e) { return e.le == 0 && e.ke == 0; });
    return MultiIndexPair::from_entries(std::move(merged));
}

// l' = l + L - e_j on the l side, k' = k + K - e_j on the k side, for ledger
// targets: (l0 - e_j + L, k0 + K - e_j).
inline MultiIndexPair ledger_absorb(const MultiIndexPair& base, const MultiIndexPair& S_pair,
                                    int j) {
    return bracket_monomial(base, S_pair, j);
}

}  // namespace bnf
