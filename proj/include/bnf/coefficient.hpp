#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "bnf/multi_index.hpp"

namespace bnf {

using Complex = std::complex<double>;

// One structured-coefficient summand for theta=0 polynomials: the scalar
// coefficient is  sum_entries inner * (M(l0,k0) - i0/2).
struct LedgerEntry {
    MultiIndexPair base;  // (l0, k0)
    int i0 = 0;
    Complex inner{0.0, 0.0};

    double weight() const { return double(base.momentum()) - 0.5 * double(i0); }

    auto key() const { return std::make_pair(base, i0); }
};

struct Coefficient {
    Complex scalar{0.0, 0.0};
    std::optional<std::vector<LedgerEntry>> ledger;  // theta=0 structured mode
    std::optional<Complex> tilde;                    // theta=1 factored mode

    Coefficient() = default;
    explicit Coefficient(Complex s) : scalar(s) {}

    bool structured() const { return ledger.has_value() || tilde.has_value(); }
};

inline Complex ledger_scalar(const std::vector<LedgerEntry>& entries) {
    Complex s{0.0, 0.0};
    for (const auto& e : entries) s += e.inner * e.weight();
    return s;
}

// merge entries with equal (l0, k0, i0), deterministic order
inline void canonicalize_ledger(std::vector<LedgerEntry>& entries) {
    std::sort(entries.begin(), entries.end(),
              [](const LedgerEntry& a, const LedgerEntry& b) { return a.key() < b.key(); });
    std::vector<LedgerEntry> out;
    for (const auto& e : entries) {
        if (!out.empty() && out.back().key() == e.key())
            out.back().inner += e.inner;
        else
            out.push_back(e);
    }
    std::erase_if(out, [](const LedgerEntry& e) { return e.inner == Complex{0.0, 0.0}; });
    entries = std::move(out);
}

}  // namespace bnf
