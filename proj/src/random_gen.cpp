#include "bnf/random_gen.hpp"

#include <cmath>

namespace bnf {

namespace {

MultiIndexPair random_index(const LatticeConfig& lat, int degree, Rng& rng) {
    while (true) {
        std::vector<ModeExp> es;
        int dl = 1 + int(rng.below(uint64_t(degree - 1)));  // 1 .. degree-1 on the l side
        for (int n = 0; n < degree; ++n) {
            int j = lat.mode_at(int(rng.below(uint64_t(lat.size()))));
            if (n < dl)
                es.push_back(ModeExp{j, 1, 0});
            else
                es.push_back(ModeExp{j, 0, 1});
        }
        MultiIndexPair mi = MultiIndexPair::from_entries(std::move(es));
        if (!mi.diagonal()) return mi;  // keep the mirror pairing non-trivial
    }
}

}  // namespace

Polynomial random_symmetric_poly(const LatticeConfig& lat, RandomPolyOptions opts, uint64_t seed) {
    Rng rng(seed);
    Polynomial f(lat);
    f.set_provenance(opts.structured ? (lat.theta == 0 ? "ledger" : "tilde") : "scalar");

    for (int pair = 0; pair < opts.n_pairs; ++pair) {
        MultiIndexPair mi = random_index(lat, opts.degree, rng);
        int i = mi.momentum();
        int t = mi.degree();
        double envelope = std::pow(opts.C, double(t - 2)) / std::pow(angle_bracket(i), opts.beta);

        if (!opts.structured) {
            Complex c{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
            f.add_term(mi, c);
            f.add_term(mi.mirror(), std::conj(c));
            continue;
        }

        if (lat.theta == 1) {
            double mag = rng.uniform(0.1, 0.9) * envelope;
            double phase = rng.uniform(0.0, 2.0 * M_PI);
            Complex tilde = mag * Complex{std::cos(phase), std::sin(phase)};
            Coefficient c;
            c.tilde = tilde;
            c.scalar = tilde * tilde_factor(mi);
            f.add_term(mi, c);
            Coefficient cm;
            cm.tilde = std::conj(tilde);
            cm.scalar = std::conj(tilde) * tilde_factor(mi);
            f.add_term(mi.mirror(), cm);
            continue;
        }

        // theta=0 ledger mode: a couple of entries, envelope shared
        int n_entries = 1 + int(rng.below(2));
        std::vector<LedgerEntry> entries;
        double weight_sum = 0.0;
        for (int n = 0; n < n_entries; ++n) {
            // sub-index 0 <= l0 <= l, 0 <= k0 <= k
            std::vector<ModeExp> sub;
            for (const auto& e : mi.entries()) {
                int le0 = int(rng.below(uint64_t(e.le + 1)));
                int ke0 = int(rng.below(uint64_t(e.ke + 1)));
                if (le0 + ke0 > 0) sub.push_back(ModeExp{e.mode, le0, ke0});
            }
            LedgerEntry entry;
            entry.base = MultiIndexPair::from_entries(std::move(sub));
            entry.i0 = int(rng.below(5)) - 2;
            double phase = rng.uniform(0.0, 2.0 * M_PI);
            entry.inner = Complex{std::cos(phase), std::sin(phase)};
            weight_sum +=
                std::abs(entry.inner) * std::max(angle_bracket(entry.i0), angle_bracket(entry.i0 - 2 * i));
            entries.push_back(std::move(entry));
        }
        double scale = rng.uniform(0.1, 0.9) * envelope / weight_sum;
        for (auto& e : entries) e.inner *= scale;

        Coefficient c;
        c.ledger = entries;
        canonicalize_ledger(*c.ledger);
        c.scalar = ledger_scalar(*c.ledger);
        f.add_term(mi, c);

        // mirrored entries (k - k0, l - l0, i0 - 2i) with conjugate inners
        std::vector<LedgerEntry> mirrored;
        for (const auto& e : entries) {
            LedgerEntry me;
            std::vector<ModeExp> sub;
            for (const auto& te : mi.entries()) {
                int le0 = te.ke - e.base.k_of(te.mode);  // (k - k0) on the l slot
                int ke0 = te.le - e.base.l_of(te.mode);
                if (le0 + ke0 > 0) sub.push_back(ModeExp{te.mode, le0, ke0});
            }
            me.base = MultiIndexPair::from_entries(std::move(sub));
            me.i0 = e.i0 - 2 * i;
            me.inner = std::conj(e.inner);
            mirrored.push_back(std::move(me));
        }
        Coefficient cm;
        cm.ledger = mirrored;
        canonicalize_ledger(*cm.ledger);
        cm.scalar = ledger_scalar(*cm.ledger);
        f.add_term(mi.mirror(), cm);
    }
    return f;
}

State random_state(const LatticeConfig& lat, double p, double target_pair_norm, double decay,
                   uint64_t seed) {
    Rng rng(seed);
    State s(lat);
    for (int idx = 0; idx < lat.size(); ++idx) {
        double amp = std::pow(angle_bracket(lat.mode_at(idx)), -decay);
        s[idx] = amp * Complex{rng.normal(), rng.normal()};
    }
    double nrm = pair_norm(s, p);
    if (nrm > 0.0) s.scale(target_pair_norm / nrm);
    return s;
}

}  // namespace bnf
