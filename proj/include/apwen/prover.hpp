#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "apwen/oracle.hpp"
#include "apwen/pattern.hpp"
#include "apwen/recgen.hpp"

namespace apwen {

enum class Verdict { APWENIAN, NOT_APWENIAN, INCONCLUSIVE };

inline const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::APWENIAN: return "APWENIAN";
        case Verdict::NOT_APWENIAN: return "NOT_APWENIAN";
        default: return "INCONCLUSIVE";
    }
}

/// Machine-checked outcome of the closure proof.
struct ProofCertificate {
    std::string pattern_text;
    int d = 0;
    bool has_uvw = false;
    int n_valid = 0;
    std::vector<StateVec> seeds;           // n = 1..N0
    size_t closure_size = 0;
    size_t closure_iterations = 0;
    Verdict verdict = Verdict::INCONCLUSIVE;
    std::optional<uint64_t> witness;       // smallest m with even H_m/2^{m-1}
    std::optional<uint32_t> bad_triple;    // offending triple when no witness found
    uint64_t total_types_xyz = 0;
    uint64_t total_types_uvw = 0;
};

namespace prover {

/// StateVec(n) for n = 1..n0 straight from the parity oracle.
inline std::vector<StateVec> seed_states(const Pattern& p, int n0) {
    std::vector<StateVec> seeds;
    seeds.reserve(n0);
    for (int n = 1; n <= n0; ++n) seeds.push_back(oracle::state_parity(p, n));
    return seeds;
}

inline uint8_t family_mask(const RecurrenceSystem& sys) {
    return sys.has_uvw ? 0x3f : 0x07;
}

/// Evaluate all entries at (s(n), s(n+1)), giving s(dn+h) for h = 0..d-1.
inline StateVec step(const RecurrenceSystem& sys, const StateVec& sn, const StateVec& sn1,
                     int h) {
    uint16_t assign = uint16_t(sn.bits) | uint16_t(sn1.bits) << 6;
    StateVec out;
    out.n = sn.n * sys.d + h;
    int nfam = sys.has_uvw ? 6 : 3;
    for (int f = 0; f < nfam; ++f) out.set(f, sys.entries[f][h].eval(assign));
    return out;
}

struct ValidationReport {
    std::vector<int> pass;  // pass[i] = 1 iff check at n = i+1 passed
    int n_valid = 0;        // 0 when nothing stabilized
};

/// Compare recurrence predictions against the parity oracle for
/// n = 1..n_max; n_valid is the smallest n from which all later checks
/// pass (expected 1).
inline ValidationReport validate_recurrences(const Pattern& p, const RecurrenceSystem& sys,
                                             int n_max) {
    ValidationReport rep;
    uint8_t fmask = family_mask(sys);
    for (int n = 1; n <= n_max; ++n) {
        StateVec sn = oracle::state_parity(p, n);
        StateVec sn1 = oracle::state_parity(p, n + 1);
        int ok = 1;
        for (int h = 0; h < sys.d; ++h) {
            StateVec pred = step(sys, sn, sn1, h);
            StateVec truth = oracle::state_parity(p, sys.d * n + h);
            if ((pred.bits & fmask) != (truth.bits & fmask)) {
                ok = 0;
                break;
            }
        }
        rep.pass.push_back(ok);
    }
    for (int n = n_max; n >= 1 && rep.pass[n - 1]; --n) rep.n_valid = n;
    return rep;
}

/// s(m) for m = 1..limit, filled iteratively from the seeds by the
/// validated recurrences.
inline std::vector<StateVec> state_table(const RecurrenceSystem& sys,
                                         const std::vector<StateVec>& seeds,
                                         uint64_t limit) {
    std::vector<StateVec> tab(seeds.begin(), seeds.begin() + std::min<uint64_t>(seeds.size(), limit));
    tab.reserve(limit);
    while (tab.size() < limit) {
        uint64_t m = tab.size() + 1;
        uint64_t n = m / sys.d;
        int h = int(m % sys.d);
        // n >= 1 and n+1 <= tab.size() hold once seeds cover 1..2d+2
        tab.push_back(step(sys, tab[n - 1], tab[n], h));
    }
    return tab;
}

/// s(m) for a single m, O(log m) distinct recursive indices.
inline StateVec eval_state(const RecurrenceSystem& sys, const std::vector<StateVec>& seeds,
                           uint64_t m) {
    if (m >= 1 && m <= seeds.size()) return seeds[m - 1];
    auto rec = [&](auto&& self, uint64_t idx) -> StateVec {
        if (idx >= 1 && idx <= seeds.size()) return seeds[idx - 1];
        uint64_t n = idx / sys.d;
        int h = int(idx % sys.d);
        return step(sys, self(self, n), self(self, n + 1), h);
    };
    return rec(rec, m);
}

/// Smallest m <= bound with Z-bit 0, oracle-confirmed when feasible.
inline std::optional<uint64_t> find_witness(const Pattern& p, const RecurrenceSystem& sys,
                                            const std::vector<StateVec>& seeds,
                                            uint64_t bound) {
    auto tab = state_table(sys, seeds, bound);
    for (uint64_t m = 1; m <= tab.size(); ++m) {
        if (tab[m - 1].z() == 0) {
            if (m <= 2048 && oracle::apwenian_bit(p, int(m)) != 0)
                throw std::logic_error("witness rejected by determinant oracle");
            return m;
        }
    }
    return std::nullopt;
}

inline uint32_t pack_triple(const StateVec& a, const StateVec& b, const StateVec& c,
                            uint8_t fmask) {
    return uint32_t(a.bits & fmask) | uint32_t(b.bits & fmask) << 6 |
           uint32_t(c.bits & fmask) << 12;
}

/// The full closure proof: validate, seed, iterate the triple closure to
/// a fixed point, and derive the verdict.
inline ProofCertificate closure_prove(const Pattern& p, const RecurrenceSystem& sys,
                                      int check_depth = 3, uint64_t witness_bound = 4096) {
    ProofCertificate cert;
    cert.pattern_text = p.text();
    cert.d = p.d();
    cert.has_uvw = sys.has_uvw;
    cert.total_types_xyz = sys.total_types_xyz;
    cert.total_types_uvw = sys.total_types_uvw;

    auto rep = validate_recurrences(p, sys, check_depth);
    cert.n_valid = rep.n_valid;
    if (rep.n_valid == 0) {
        cert.verdict = Verdict::INCONCLUSIVE;
        return cert;
    }
    const int d = sys.d;
    const int n0 = std::max({2 * d + 2, 16, d * rep.n_valid + d + 2});
    cert.seeds = seed_states(p, n0);
    const uint8_t fmask = family_mask(sys);

    std::set<uint32_t> closure;
    std::vector<uint32_t> frontier;
    for (int n = rep.n_valid; n + 2 <= n0; ++n) {
        uint32_t t = pack_triple(cert.seeds[n - 1], cert.seeds[n], cert.seeds[n + 1], fmask);
        if (closure.insert(t).second) frontier.push_back(t);
    }
    auto unpack = [&](uint32_t t, int slot) {
        StateVec s;
        s.bits = uint8_t((t >> (6 * slot)) & fmask);
        return s;
    };
    size_t iterations = 0;
    while (!frontier.empty()) {
        ++iterations;
        std::vector<uint32_t> next_frontier;
        for (uint32_t t : frontier) {
            StateVec a = unpack(t, 0), b = unpack(t, 1), c = unpack(t, 2);
            std::vector<StateVec> block(2 * d);
            for (int h = 0; h < d; ++h) {
                block[h] = step(sys, a, b, h);
                block[d + h] = step(sys, b, c, h);
            }
            for (int i = 0; i + 2 < 2 * d; ++i) {
                uint32_t nt = pack_triple(block[i], block[i + 1], block[i + 2], fmask);
                if (closure.insert(nt).second) next_frontier.push_back(nt);
            }
        }
        frontier = std::move(next_frontier);
    }
    cert.closure_size = closure.size();
    cert.closure_iterations = iterations;

    bool all_odd = true;
    for (int m = 1; m <= d * rep.n_valid - 1 && m <= n0; ++m)
        if (cert.seeds[m - 1].z() == 0) all_odd = false;
    uint32_t bad = 0;
    for (uint32_t t : closure) {
        for (int slot = 0; slot < 3; ++slot)
            if (unpack(t, slot).z() == 0) {
                all_odd = false;
                bad = t;
            }
        if (!all_odd) break;
    }
    if (all_odd) {
        cert.verdict = Verdict::APWENIAN;
    } else {
        cert.verdict = Verdict::NOT_APWENIAN;
        cert.witness = find_witness(p, sys, cert.seeds, witness_bound);
        if (!cert.witness) cert.bad_triple = bad;
    }
    return cert;
}

}  // namespace prover
}  // namespace apwen
