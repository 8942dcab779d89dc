#pragma once

#include <array>
#include <atomic>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "apwen/pattern.hpp"
#include "apwen/symbols.hpp"

namespace apwen {

/// A permutation-shape classifier word s_0..s_{d-1} (PY) or
/// s_0..s_{d-1} s_d (PZ, PX), letters being residues 0..d-1.
struct TypeWord {
    Kind kind = Kind::PY;
    int h = 0;
    int k = 0;  // PX only
    std::vector<int> letters;

    /// Letters rendered 'a','b','c',...
    std::string text() const {
        std::string s;
        for (int v : letters) s += char('a' + v);
        return s;
    }
};

/// The eta/nu case of one position, per the atom-evaluation tables.
struct EtaCase {
    char nu = 'G';  // 'G', 'Z' or 'X'
    int eta0 = 0, eta1 = 0, eta2 = 0, eta3 = 0;  // eta3 meaningful for Z/X only

    std::string text() const {
        std::string s(1, nu);
        s += char('0' + eta0);
        s += char('0' + eta1);
        s += char('0' + eta2);
        if (nu != 'G') s += char('0' + eta3);
        return s;
    }
};

/// Per-family, per-residue recurrence polynomials for one pattern.
///
/// entry(fam, h) is the Gf2Poly E with fam_{dn+h} = E(state(n), state(n+1))
/// mod 2 for all n >= n_valid.  Families 0..2 (X,Y,Z) are always present;
/// 3..5 (U,V,W) only when the pattern's last sign is -1.
struct RecurrenceSystem {
    std::string pattern_text;
    int d = 0;
    bool has_uvw = false;
    int n_valid = 0;  // 0 until validated
    std::array<std::vector<Gf2Poly>, 6> entries;          // [family][h]
    std::array<std::vector<uint64_t>, 6> type_counts;     // contributing types per entry
    uint64_t total_types_xyz = 0;  // nonzero-product types, X,Y,Z direction
    uint64_t total_types_uvw = 0;  // same for the swapped direction

    const Gf2Poly& entry(int family, int h) const { return entries[family][h]; }

    bool operator==(const RecurrenceSystem& o) const {
        return pattern_text == o.pattern_text && d == o.d && has_uvw == o.has_uvw &&
               entries == o.entries && type_counts == o.type_counts &&
               total_types_xyz == o.total_types_xyz && total_types_uvw == o.total_types_uvw;
    }

    /// Canonical text: one line per entry, families X,Y,Z,U,V,W, h ascending.
    std::string text() const {
        static const char fam[] = "XYZUVW";
        std::string out;
        int nfam = has_uvw ? 6 : 3;
        for (int f = 0; f < nfam; ++f)
            for (int h = 0; h < d; ++h) {
                out += fam[f];
                out += '(' + std::to_string(d) + "n+" + std::to_string(h) + ") = ";
                out += entries[f][h].text();
                out += '\n';
            }
        return out;
    }
};

namespace recgen {

// Test hook: when set, Psi_G(0,0,0) is deliberately wrong so the
// self-test can demonstrate it catches a corrupted table.
inline std::atomic<bool> corrupt_psi_for_tests{false};

/// Psi value before bar resolution: barred family 0..2 (X,Y,Z) + shift,
/// or nullopt for a vanishing atom.
struct BarredVar {
    int family;  // 0=Xbar, 1=Ybar, 2=Zbar
    int shift;   // 0=n, 1=n+1
};

inline std::optional<BarredVar> psi(char nu, int eta0, int eta1, int eta2, int eta3 = 0) {
    // codes: -1 = 0, else family + 3*shift
    static constexpr int8_t G[8] = {0, 1, -1, 5, 5, -1, 3, 4};
    static constexpr int8_t Z[16] = {-1, -1, 2, 2, -1, -1, -1, -1,
                                     0, 0, 1, -1, -1, -1, 5, 5};
    static constexpr int8_t X[16] = {-1, -1, 0, 0, -1, -1, -1, -1,
                                     -1, -1, 5, -1, -1, -1, 3, 3};
    int8_t code;
    if (nu == 'G') {
        code = G[eta0 * 4 + eta1 * 2 + eta2];
        if (corrupt_psi_for_tests.load(std::memory_order_relaxed) &&
            eta0 == 0 && eta1 == 0 && eta2 == 0)
            code = 1;
    } else {
        int idx = eta0 * 8 + eta1 * 4 + eta2 * 2 + eta3;
        code = (nu == 'Z') ? Z[idx] : X[idx];
    }
    if (code < 0) return std::nullopt;
    return BarredVar{code % 3, code / 3};
}

/// One generation pass: constrain by `fam`, use `pset` for the position
/// rule, emit targets in families [target_base..target_base+2] and
/// resolve bars to families [bar_base..bar_base+2].
struct RunConfig {
    int d = 0;
    std::vector<bool> pset;  // position i in P of this run
    int target_base = 0;     // 0 -> X,Y,Z targets; 3 -> U,V,W
    int bar_base = 0;        // bars resolve to families bar_base+0..2
};

inline RunConfig main_run(const Pattern& p) {
    RunConfig c;
    c.d = p.d();
    c.pset.assign(c.d, false);
    for (int i : p.P()) c.pset[i] = true;
    c.target_base = 0;
    c.bar_base = (p.last_sign() == 1) ? 0 : 3;
    return c;
}

inline RunConfig swapped_run(const Pattern& p) {
    RunConfig c;
    c.d = p.d();
    c.pset.assign(c.d, false);
    for (int i : p.Q()) c.pset[i] = true;
    c.target_base = 3;
    c.bar_base = 0;
    return c;
}

inline EtaCase eta_case(const RunConfig& run, Kind kind, int h, int k,
                        const std::vector<int>& letters, int i) {
    const int d = run.d;
    EtaCase e;
    e.eta0 = (i + 1 <= h) ? 1 : 0;
    e.eta1 = (d - i <= h) ? 1 : 0;
    e.eta2 = (letters[i] == d - 1 - i) ? 1 : 0;
    if (kind != Kind::PY) e.eta3 = (letters[d] == d - 1 - i) ? 1 : 0;
    if (kind == Kind::PZ && i == (h + d - 1) % d)
        e.nu = 'Z';
    else if (kind == Kind::PX && i == k)
        e.nu = 'X';
    else
        e.nu = 'G';
    return e;
}

/// The resolved factor of one position: monomial bit, or nullopt if the
/// atom vanishes.
inline std::optional<int> mu_bit(const RunConfig& run, Kind kind, int h, int k,
                                 const std::vector<int>& letters, int i) {
    EtaCase e = eta_case(run, kind, h, k, letters, i);
    auto v = psi(e.nu, e.eta0, e.eta1, e.eta2, e.eta3);
    if (!v) return std::nullopt;
    return SymVar{run.bar_base + v->family, v->shift}.bit();
}

/// Product of the d position factors as one multilinear monomial
/// (repeated variables collapse: bits are idempotent mod 2), or nullopt
/// if any factor vanishes.
inline std::optional<Monomial> eval_type(const RunConfig& run, const TypeWord& t) {
    Monomial mon = 0;
    for (int i = 0; i < run.d; ++i) {
        auto b = mu_bit(run, t.kind, t.h, t.k, t.letters, i);
        if (!b) return std::nullopt;
        mon |= Monomial(1) << *b;
    }
    return mon;
}

namespace detail {

/// Allowed letters per position under the position rule: friendly letter
/// d-1-i always, plus every j with (i+j+1) mod d in P.
inline std::vector<std::vector<int>> position_choices(const RunConfig& run) {
    std::vector<std::vector<int>> choices(run.d);
    for (int i = 0; i < run.d; ++i)
        for (int j = 0; j < run.d; ++j) {
            int cs = (i + j + 1) % run.d;
            if (cs == 0 || run.pset[cs]) choices[i].push_back(j);
        }
    return choices;
}

inline int relax_class(Kind kind, int d, int h, int k) {
    if (kind == Kind::PZ) return (h + d - 1) % d;
    if (kind == Kind::PX) return k;
    return -1;
}

/// Realizability balance: a type is the form of an actual permutation
/// only if, for every bottom value j, the occurrences supplied by block
/// d-1-j (friendly letters), the designated unsociable letters, and the
/// relaxed row's letter add up to the size of value class j.  Block
/// sizes differ from n only by the 0/1 terms below, so the condition is
/// independent of n.
///
/// `nf` is the bitmask of non-friendly positions; `consumed` is the
/// bitmask of values used non-friendly plus the tail value (if any).
inline bool balance_ok(int d, int h, int relax, uint32_t nf, uint32_t consumed) {
    for (int j = 0; j < d; ++j) {
        int p = d - 1 - j;
        int lhs = (p < h ? 1 : 0) - (relax == p ? 1 : 0) - int((nf >> p) & 1) +
                  int((consumed >> j) & 1);
        if (lhs != (j < h ? 1 : 0)) return false;
    }
    return true;
}

}  // namespace detail

/// Stream every TypeWord of one (kind, h, k) satisfying the position
/// rule and the distinctness filter (no letter value used twice among
/// non-friendly occurrences; the tail always counts as non-friendly).
/// Lexicographic order over the full word including the tail.
inline void enumerate_types(const RunConfig& run, Kind kind, int h, int k,
                            const std::function<void(const TypeWord&)>& sink) {
    const int d = run.d;
    auto choices = detail::position_choices(run);
    TypeWord t;
    t.kind = kind;
    t.h = h;
    t.k = k;
    t.letters.assign(kind == Kind::PY ? d : d + 1, 0);
    const int relax = detail::relax_class(kind, d, h, k);
    auto rec = [&](auto&& self, int i, uint32_t used, uint32_t nf) -> void {
        if (i == d) {
            if (kind == Kind::PY) {
                if (detail::balance_ok(d, h, relax, nf, used)) sink(t);
                return;
            }
            for (int tail = 0; tail < d; ++tail) {
                if (used & (uint32_t(1) << tail)) continue;
                if (!detail::balance_ok(d, h, relax, nf, used | (uint32_t(1) << tail)))
                    continue;
                t.letters[d] = tail;
                sink(t);
            }
            return;
        }
        for (int j : choices[i]) {
            if (j == d - 1 - i) {
                t.letters[i] = j;
                self(self, i + 1, used, nf);
            } else if (!(used & (uint32_t(1) << j))) {
                t.letters[i] = j;
                self(self, i + 1, used | (uint32_t(1) << j), nf | (uint32_t(1) << i));
            }
        }
    };
    rec(rec, 0, 0, 0);
}

namespace detail {

/// A partial accumulation for one entry of one run.
struct UnitResult {
    Gf2Poly poly;
    uint64_t contributing = 0;
};

/// Work unit: fixed (kind, h, k, tail, s0).  tail/s0 are -1 when the
/// dimension does not apply (PY has no tail).
struct WorkUnit {
    Kind kind;
    int h, k, tail, s0;
};

/// Fused DFS over positions with incremental distinctness and
/// zero-factor pruning; products accumulate as monomials.
inline void run_unit(const RunConfig& run, const std::vector<std::vector<int>>& choices,
                     const WorkUnit& u, UnitResult& out) {
    const int d = run.d;
    std::vector<int> letters(u.kind == Kind::PY ? d : d + 1, 0);
    if (u.kind != Kind::PY) letters[d] = u.tail;
    // mu for position i, letter j, given this unit's tail
    std::vector<std::array<int8_t, 32>> mu(d);
    for (int i = 0; i < d; ++i) {
        mu[i].fill(-1);
        for (int j : choices[i]) {
            letters[i] = j;
            auto b = mu_bit(run, u.kind, u.h, u.k, letters, i);
            mu[i][j] = b ? int8_t(*b) : int8_t(-1);
        }
    }
    uint32_t used0 = (u.kind == Kind::PY) ? 0 : (uint32_t(1) << u.tail);
    const int relax = detail::relax_class(u.kind, d, u.h, u.k);
    auto rec = [&](auto&& self, int i, uint32_t used, uint32_t nf, Monomial acc) -> void {
        if (i == d) {
            if (!balance_ok(d, u.h, relax, nf, used)) return;
            out.poly.toggle(acc);
            ++out.contributing;
            return;
        }
        for (int j : choices[i]) {
            if (i == 0 && j != u.s0) continue;
            int8_t b = mu[i][j];
            if (b < 0) continue;
            if (j == d - 1 - i) {
                self(self, i + 1, used, nf, Monomial(acc | (Monomial(1) << b)));
            } else if (!(used & (uint32_t(1) << j))) {
                self(self, i + 1, used | (uint32_t(1) << j), nf | (uint32_t(1) << i),
                     Monomial(acc | (Monomial(1) << b)));
            }
        }
    };
    rec(rec, 0, used0, 0, 0);
}

inline std::vector<WorkUnit> make_units(const RunConfig& run,
                                        const std::vector<std::vector<int>>& choices) {
    std::vector<WorkUnit> units;
    const int d = run.d;
    for (Kind kind : {Kind::PX, Kind::PY, Kind::PZ}) {
        for (int h = 0; h < d; ++h) {
            int kmax = (kind == Kind::PX) ? d : 1;
            for (int k = 0; k < kmax; ++k) {
                if (kind == Kind::PY) {
                    for (int s0 : choices[0]) units.push_back({kind, h, k, -1, s0});
                } else {
                    for (int tail = 0; tail < d; ++tail)
                        for (int s0 : choices[0]) {
                            if (s0 == tail && s0 != d - 1)  // s0 non-friendly equal to tail
                                continue;
                            units.push_back({kind, h, k, tail, s0});
                        }
                }
            }
        }
    }
    return units;
}

inline int target_family(const RunConfig& run, Kind kind) {
    int off = (kind == Kind::PX) ? 0 : (kind == Kind::PY ? 1 : 2);
    return run.target_base + off;
}

}  // namespace detail

/// Checkpoint callbacks for resumable generation.  `lookup` returns a
/// previously saved unit result; `store` persists a freshly computed one.
struct Checkpoint {
    std::function<bool(size_t, detail::UnitResult&)> lookup;
    std::function<void(size_t, const detail::UnitResult&)> store;
};

/// One generation pass over all (kind, h, k) of a run; XOR-merges unit
/// polynomials into the system entries for this run's target families.
inline uint64_t generate_run(const Pattern& p, const RunConfig& run, RecurrenceSystem& sys,
                             int jobs = 1, const Checkpoint* ckpt = nullptr,
                             size_t ckpt_base = 0) {
    auto choices = detail::position_choices(run);
    auto units = detail::make_units(run, choices);
    std::vector<detail::UnitResult> results(units.size());

    std::atomic<size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= units.size()) break;
            if (ckpt && ckpt->lookup && ckpt->lookup(ckpt_base + i, results[i])) continue;
            detail::run_unit(run, choices, units[i], results[i]);
            if (ckpt && ckpt->store) ckpt->store(ckpt_base + i, results[i]);
        }
    };
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    uint64_t total = 0;
    for (size_t i = 0; i < units.size(); ++i) {
        int fam = detail::target_family(run, units[i].kind);
        sys.entries[fam][units[i].h] ^= results[i].poly;
        sys.type_counts[fam][units[i].h] += results[i].contributing;
        total += results[i].contributing;
    }
    return total;
}

/// Build the full recurrence system by type enumeration (Algorithm 1 + 2
/// of the method): one pass for X,Y,Z, and for last sign -1 a second
/// pass with P/Q and J/K roles swapped producing U,V,W.
inline RecurrenceSystem generate_system(const Pattern& p, int jobs = 1,
                                        const Checkpoint* ckpt = nullptr) {
    RecurrenceSystem sys;
    sys.pattern_text = p.text();
    sys.d = p.d();
    sys.has_uvw = (p.last_sign() == -1);
    for (int f = 0; f < 6; ++f) {
        sys.entries[f].assign(sys.d, {});
        sys.type_counts[f].assign(sys.d, 0);
    }
    sys.total_types_xyz = generate_run(p, main_run(p), sys, jobs, ckpt, 0);
    if (sys.has_uvw)
        sys.total_types_uvw =
            generate_run(p, swapped_run(p), sys, jobs, ckpt, size_t(1) << 32);
    return sys;
}

namespace detail {

/// Subset-driven generation: fix the set C of values consumed by
/// non-friendly positions.  The balance equations then force which
/// positions are non-friendly, and a position's atom does not depend on
/// which value of C it holds — so every type with consumption set C has
/// the same monomial, and their number is the number of bipartite
/// matchings between the forced positions and C under the position rule.
inline void fast_unit(const RunConfig& run, const std::vector<std::vector<int>>& choices,
                      Kind kind, int h, int k, int tail, UnitResult& out) {
    const int d = run.d;
    const int relax = relax_class(kind, d, h, k);
    std::vector<int> letters(kind == Kind::PY ? d : d + 1, 0);
    if (kind != Kind::PY) letters[d] = tail;
    std::vector<int8_t> f_mu(d), n_mu(d);
    std::vector<uint32_t> adj(d, 0);
    for (int i = 0; i < d; ++i) {
        letters[i] = d - 1 - i;
        auto b = mu_bit(run, kind, h, k, letters, i);
        f_mu[i] = b ? int8_t(*b) : int8_t(-1);
        letters[i] = (d - i) % d;  // any non-friendly letter; the atom ignores which
        b = mu_bit(run, kind, h, k, letters, i);
        n_mu[i] = b ? int8_t(*b) : int8_t(-1);
        letters[i] = d - 1 - i;
        for (int j : choices[i])
            if (j != d - 1 - i) adj[i] |= uint32_t(1) << j;
    }
    const uint32_t tailbit = (kind == Kind::PY) ? 0 : (uint32_t(1) << tail);
    std::vector<int> nf_pos;
    for (uint32_t c = 0; c < (uint32_t(1) << d); ++c) {
        if (c & tailbit) continue;
        uint32_t consumed = c | tailbit;
        uint32_t nf = 0;
        bool bad = false;
        for (int p = 0; p < d && !bad; ++p) {
            int v = (p < h ? 1 : 0) - (relax == p ? 1 : 0) - (d - 1 - p < h ? 1 : 0) +
                    int((consumed >> (d - 1 - p)) & 1);
            if (v < 0 || v > 1) bad = true;
            else nf |= uint32_t(v) << p;
        }
        if (bad || std::popcount(nf) != std::popcount(c)) continue;
        Monomial acc = 0;
        nf_pos.clear();
        for (int p = 0; p < d && !bad; ++p) {
            int8_t b = (nf >> p) & 1 ? n_mu[p] : f_mu[p];
            if (b < 0) bad = true;
            else acc |= Monomial(1) << b;
            if ((nf >> p) & 1) nf_pos.push_back(p);
        }
        if (bad) continue;
        // count assignments of the values in c to the forced positions
        uint64_t count = 0;
        auto rec = [&](auto&& self, size_t idx, uint32_t avail) -> void {
            if (idx == nf_pos.size()) {
                ++count;
                return;
            }
            uint32_t opts = adj[nf_pos[idx]] & avail;
            while (opts) {
                uint32_t bit = opts & (~opts + 1);
                opts ^= bit;
                self(self, idx + 1, avail ^ bit);
            }
        };
        rec(rec, 0, c);
        out.contributing += count;
        if (count & 1) out.poly.toggle(acc);
    }
}

inline uint64_t fast_run(const Pattern& p, const RunConfig& run, RecurrenceSystem& sys) {
    auto choices = detail::position_choices(run);
    uint64_t total = 0;
    const int d = run.d;
    for (Kind kind : {Kind::PX, Kind::PY, Kind::PZ}) {
        for (int h = 0; h < d; ++h) {
            int kmax = (kind == Kind::PX) ? d : 1;
            int fam = target_family(run, kind);
            for (int k = 0; k < kmax; ++k) {
                int tmax = (kind == Kind::PY) ? 1 : d;
                for (int tail = 0; tail < tmax; ++tail) {
                    UnitResult r;
                    fast_unit(run, choices, kind, h, k, kind == Kind::PY ? -1 : tail, r);
                    sys.entries[fam][h] ^= r.poly;
                    sys.type_counts[fam][h] += r.contributing;
                    total += r.contributing;
                }
            }
        }
    }
    return total;
}

}  // namespace detail

/// Same output as generate_system, computed by subset-mask dynamic
/// programming instead of materializing types.
inline RecurrenceSystem fast_generate_system(const Pattern& p) {
    RecurrenceSystem sys;
    sys.pattern_text = p.text();
    sys.d = p.d();
    sys.has_uvw = (p.last_sign() == -1);
    for (int f = 0; f < 6; ++f) {
        sys.entries[f].assign(sys.d, {});
        sys.type_counts[f].assign(sys.d, 0);
    }
    sys.total_types_xyz = detail::fast_run(p, main_run(p), sys);
    if (sys.has_uvw) sys.total_types_uvw = detail::fast_run(p, swapped_run(p), sys);
    return sys;
}

}  // namespace recgen
}  // namespace apwen
