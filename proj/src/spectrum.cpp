#include "bnf/spectrum.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>

#include "bnf/parallel.hpp"
#include "bnf/rng.hpp"

namespace bnf {

Potential sample_potential(int theta, double m, int J, uint64_t seed) {
    if (m <= 0.5) throw std::invalid_argument("sample_potential: m must be > 1/2");
    if (theta != 0 && theta != 1) throw std::invalid_argument("sample_potential: bad theta");
    Potential pot;
    pot.theta = theta;
    pot.m = m;
    pot.seed = seed;
    Rng rng(seed);
    if (theta == 0) {
        for (int j = 0; j <= J; ++j) {
            double v = rng.uniform(-0.5, 0.5);
            pot.v[j] = v;
            if (j > 0) pot.v[-j] = v;
        }
    } else {
        for (int a = 1; a <= J; ++a) {
            pot.v[a] = rng.uniform(-0.5, 0.5);
            pot.v[-a] = rng.uniform(-0.5, 0.5);
        }
    }
    return pot;
}

FrequencyVector frequencies(const Potential& pot, const LatticeConfig& lat) {
    if (lat.theta != pot.theta) throw std::invalid_argument("frequencies: theta mismatch");
    FrequencyVector fv(lat);
    for (int idx = 0; idx < lat.size(); ++idx) {
        int j = lat.mode_at(idx);
        auto it = pot.v.find(j);
        double vj = it == pot.v.end() ? 0.0 : it->second;
        double base = -double(j) * double(j) + vj / std::pow(angle_bracket(j), pot.m);
        fv.omega[static_cast<size_t>(idx)] = sgn_theta(pot.theta, j) * base;
    }
    return fv;
}

namespace {

// sum over j of |l_j + l_{-j} - k_j - k_{-j}|, optionally restricted to |j| > N
int mirror_sum(const MultiIndexPair& mi, int min_abs) {
    int acc = 0;
    for (const auto& e : mi.entries()) {
        int j = e.mode;
        if (std::abs(j) <= min_abs) continue;
        acc += std::abs(mi.l_of(j) + mi.l_of(-j) - mi.k_of(j) - mi.k_of(-j));
    }
    return acc;
}

int diff_sum(const MultiIndexPair& mi) {
    int acc = 0;
    for (const auto& e : mi.entries()) acc += std::abs(e.le - e.ke);
    return acc;
}

}  // namespace

bool in_O_set(const MultiIndexPair& mi, int r, int N, int theta) {
    int t = mi.degree();
    if (t < 3 || t > r) return false;
    int tails = mi.tail_units(N);
    if (tails > 2) return false;
    if (tails < 2) {
        int head = theta == 1 ? diff_sum(mi) : mirror_sum(mi, -1);
        return head != 0;
    }
    return mirror_sum(mi, N) != 0;
}

namespace {

struct Enumerator {
    int r, N, theta, J;
    LatticeConfig lat;
    std::vector<int> head_modes;
    std::vector<int> tail_modes;
    const std::function<void(const MultiIndexPair&)>* sink = nullptr;
    size_t budget = 0;
    size_t emitted = 0;

    void consider(std::vector<ModeExp> entries) {
        MultiIndexPair mi = MultiIndexPair::from_entries(std::move(entries));
        if (!in_O_set(mi, r, N, theta)) return;
        if (mi.mirror() < mi) return;  // canonical: keep one of each mirror pair
        if (++emitted > budget) throw std::runtime_error("enumerate_O: combinatorial budget exceeded");
        (*sink)(mi);
    }

    void with_tails(const std::vector<ModeExp>& head) {
        int h = 0;
        for (const auto& e : head) h += e.le + e.ke;
        if (h + 0 >= 3 && h <= r) consider(head);
        if (h + 1 <= r && h + 1 >= 3) {
            for (int j : tail_modes) {
                for (int side = 0; side < 2; ++side) {
                    auto es = head;
                    es.push_back(side == 0 ? ModeExp{j, 1, 0} : ModeExp{j, 0, 1});
                    consider(std::move(es));
                }
            }
        }
        if (h + 2 <= r && h + 2 >= 3) {
            for (size_t a = 0; a < tail_modes.size(); ++a) {
                for (size_t b = a; b < tail_modes.size(); ++b) {
                    int ja = tail_modes[a], jb = tail_modes[b];
                    // unordered tail pair, each unit on the l or the k side
                    std::vector<std::pair<ModeExp, ModeExp>> placements;
                    placements.push_back({ModeExp{ja, 1, 0}, ModeExp{jb, 1, 0}});
                    placements.push_back({ModeExp{ja, 1, 0}, ModeExp{jb, 0, 1}});
                    placements.push_back({ModeExp{ja, 0, 1}, ModeExp{jb, 0, 1}});
                    if (ja != jb) placements.push_back({ModeExp{ja, 0, 1}, ModeExp{jb, 1, 0}});
                    for (const auto& [ea, eb] : placements) {
                        auto es = head;
                        es.push_back(ea);
                        es.push_back(eb);
                        consider(std::move(es));
                    }
                }
            }
        }
    }

    void recurse_head(size_t mode_idx, int remaining, std::vector<ModeExp>& acc) {
        if (mode_idx == head_modes.size() || remaining == 0) {
            with_tails(acc);
            return;
        }
        int j = head_modes[mode_idx];
        for (int le = 0; le <= remaining; ++le) {
            for (int ke = 0; le + ke <= remaining; ++ke) {
                bool pushed = false;
                if (le + ke > 0) {
                    acc.push_back(ModeExp{j, le, ke});
                    pushed = true;
                }
                recurse_head(mode_idx + 1, remaining - le - ke, acc);
                if (pushed) acc.pop_back();
            }
        }
    }

    void run() {
        std::vector<ModeExp> acc;
        recurse_head(0, r, acc);
    }
};

}  // namespace

void enumerate_O(int r, int N, int theta, int J,
                 const std::function<void(const MultiIndexPair&)>& sink,
                 EnumerationBudget budget) {
    if (r < 3) throw std::invalid_argument("enumerate_O: r must be >= 3");
    if (N > J) throw std::invalid_argument("enumerate_O: N must be <= J");
    Enumerator e;
    e.r = r;
    e.N = N;
    e.theta = theta;
    e.J = J;
    e.lat = LatticeConfig(theta, J, theta == 0);
    long long tail_cap = std::min<long long>(J, 4LL * r * N * N);
    for (int idx = 0; idx < e.lat.size(); ++idx) {
        int j = e.lat.mode_at(idx);
        if (std::abs(j) <= N)
            e.head_modes.push_back(j);
        else if (std::abs(j) <= tail_cap)
            e.tail_modes.push_back(j);
    }
    e.sink = &sink;
    e.budget = budget.max_emitted;
    e.run();
}

std::vector<MultiIndexPair> collect_O(int r, int N, int theta, int J, EnumerationBudget budget) {
    std::vector<MultiIndexPair> out;
    enumerate_O(r, N, theta, J, [&](const MultiIndexPair& mi) { out.push_back(mi); }, budget);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

ScanReport resonance_scan(const FrequencyVector& omega, int r, int N,
                          const NormalFormParams& params, int theta, EnumerationBudget budget) {
    ScanReport report;
    double npow = std::pow(params.N, params.alpha);
    enumerate_O(r, N, theta, omega.lattice.J, [&](const MultiIndexPair& mi) {
        ++report.scanned;
        double divisor = small_divisor(omega, mi, theta);
        double threshold = params.gamma * double(M_lk(mi, params.N)) / npow;
        if (!(std::abs(divisor) > threshold))
            report.violations.push_back({mi, divisor, threshold});
    }, budget);
    return report;
}

MeasureEstimate measure_estimate(int theta, double m, int r, int N, const NormalFormParams& params,
                                 int J, int samples, uint64_t seed, int threads,
                                 EnumerationBudget budget) {
    if (samples < 100) throw std::invalid_argument("measure_estimate: samples must be >= 100");
    LatticeConfig lat(theta, J, theta == 0);

    // precompute the scan family once; per sample only the divisors change
    struct Item {
        std::vector<std::pair<int, int>> weights;  // (mode, sgn^theta(j) (l_j-k_j))
        double threshold = 0.0;
    };
    std::vector<Item> items;
    double npow = std::pow(params.N, params.alpha);
    enumerate_O(r, N, theta, J, [&](const MultiIndexPair& mi) {
        Item item;
        for (const auto& e : mi.entries())
            if (e.le != e.ke)
                item.weights.push_back({e.mode, sgn_theta(theta, e.mode) * (e.le - e.ke)});
        item.threshold = params.gamma * double(M_lk(mi, params.N)) / npow;
        items.push_back(std::move(item));
    }, budget);

    std::vector<char> bad(static_cast<size_t>(samples), 0);
    parallel_for(static_cast<size_t>(samples), threads, [&](size_t i) {
        Potential pot = sample_potential(theta, m, J, derive_seed(seed, i));
        FrequencyVector fv = frequencies(pot, lat);
        for (const auto& item : items) {
            double d = 0.0;
            for (const auto& [mode, w] : item.weights)
                d += fv.omega[static_cast<size_t>(lat.index_of(mode))] * w;
            if (!(std::abs(d) > item.threshold)) {
                bad[i] = 1;
                break;
            }
        }
    });

    MeasureEstimate est;
    est.samples = samples;
    for (char b : bad) est.bad += b;
    est.fraction = double(est.bad) / double(samples);

    // 95% Wilson interval
    double z = 1.959963984540054;
    double n = samples, phat = est.fraction;
    double denom = 1.0 + z * z / n;
    double center = (phat + z * z / (2.0 * n)) / denom;
    double half = z * std::sqrt(phat * (1.0 - phat) / n + z * z / (4.0 * n * n)) / denom;
    est.ci_lo = std::max(0.0, center - half);
    est.ci_hi = std::min(1.0, center + half);

    // advisory analytic measure envelope, never enforced
    double rs = std::max(1, r - 3);
    double K = std::pow(4.0, rs + 4.0 + m) * std::pow(rs, m + 3.0);
    est.advisory_bound =
        std::min(1.0, K * params.gamma / std::pow(double(N), params.alpha - 2.0 * m - r - 4.0));
    return est;
}

}  // namespace bnf
