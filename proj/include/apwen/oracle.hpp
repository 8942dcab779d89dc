#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include <gmpxx.h>

#include "apwen/gf2.hpp"
#include "apwen/pattern.hpp"
#include "apwen/symbols.hpp"

namespace apwen {

/// Parities of the six permutation counts at one index n.
/// Bit layout matches SymVar: X,Y,Z,U,V,W.
struct StateVec {
    uint32_t n = 0;
    uint8_t bits = 0;

    int get(int family) const { return (bits >> family) & 1; }
    void set(int family, int v) {
        bits = uint8_t((bits & ~(1u << family)) | (uint32_t(v & 1) << family));
    }
    int x() const { return get(0); }
    int y() const { return get(1); }
    int z() const { return get(2); }
    int u() const { return get(3); }
    int v() const { return get(4); }
    int w() const { return get(5); }
    int t() const { return x() ^ (x() & y()) ^ y(); }
    int r() const { return u() ^ (u() & v()) ^ v(); }
};

namespace oracle {

inline bool in_family(const Pattern& p, Family fam, uint64_t t) {
    return fam == Family::J ? p.in_J(t) : p.in_K(t);
}

/// Exact Hankel determinant H_n(f) by fraction-free (Bareiss) elimination.
inline mpz_class hankel_exact(const Pattern& p, int n) {
    if (n < 1) throw std::invalid_argument("hankel order must be >= 1");
    std::vector<std::vector<mpz_class>> a(n, std::vector<mpz_class>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a[i][j] = p.sign_at(uint64_t(i) + j);
    mpz_class prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (a[k][k] == 0) {
            int piv = -1;
            for (int r = k + 1; r < n; ++r)
                if (a[r][k] != 0) {
                    piv = r;
                    break;
                }
            if (piv < 0) return 0;
            std::swap(a[k], a[piv]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                a[i][j] = a[k][k] * a[i][j] - a[i][k] * a[k][j];
                mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

/// H_n(f) mod q, q prime, by elimination over the q-element field.
inline uint64_t hankel_mod(const Pattern& p, int n, uint64_t q) {
    if (n < 1) throw std::invalid_argument("hankel order must be >= 1");
    auto powmod = [q](uint64_t b, uint64_t e) {
        uint64_t r = 1;
        b %= q;
        while (e) {
            if (e & 1) r = r * b % q;
            b = b * b % q;
            e >>= 1;
        }
        return r;
    };
    std::vector<std::vector<uint64_t>> a(n, std::vector<uint64_t>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            int s = p.sign_at(uint64_t(i) + j);
            a[i][j] = s == 1 ? 1 : q - 1;
        }
    uint64_t det = 1;
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r)
            if (a[r][col] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) return 0;
        if (piv != col) {
            std::swap(a[col], a[piv]);
            det = (q - det) % q;
        }
        det = det * a[col][col] % q;
        uint64_t inv = powmod(a[col][col], q - 2);
        for (int r = col + 1; r < n; ++r) {
            if (a[r][col] == 0) continue;
            uint64_t f = a[r][col] * inv % q;
            for (int c = col; c < n; ++c)
                a[r][c] = (a[r][c] + (q - f * a[col][c] % q)) % q;
        }
    }
    return det;
}

/// (H_m / 2^{m-1}) mod 2 via the delta-matrix determinant over GF(2):
/// entry (i,j) = delta_{i+j} for j <= m-2, last column all ones.
inline int apwenian_bit(const Pattern& p, int m) {
    if (m < 1) throw std::invalid_argument("order must be >= 1");
    Gf2Matrix mat(m);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j + 1 < m; ++j) mat.set(i, j, p.delta(uint64_t(i) + j));
        mat.set(i, m - 1, 1);
    }
    return mat.det();
}

/// Exact H_m / 2^{m-1}; throws if 2^{m-1} does not divide H_m
/// (that divisibility failing would signal an internal bug).
inline mpz_class hankel_ratio_exact(const Pattern& p, int m) {
    mpz_class h = hankel_exact(p, m);
    mpz_class pow2 = 1;
    pow2 <<= (m - 1);
    if (!mpz_divisible_p(h.get_mpz_t(), pow2.get_mpz_t()))
        throw std::logic_error("H_m not divisible by 2^{m-1}");
    return h / pow2;
}

/// Parity of #{sigma in S_m : i + sigma_i in family for all i != l}.
/// l = m relaxes nothing.  Permanent mod 2 equals determinant mod 2.
inline int count_parity(const Pattern& p, Family fam, int m, int l) {
    if (m < 1 || l < 0 || l > m) throw std::invalid_argument("bad (m, l)");
    Gf2Matrix mat(m);
    for (int i = 0; i < m; ++i) {
        if (i == l) {
            for (int j = 0; j < m; ++j) mat.set(i, j, 1);
        } else {
            for (int j = 0; j < m; ++j)
                mat.set(i, j, in_family(p, fam, uint64_t(i) + j) ? 1 : 0);
        }
    }
    return mat.det();
}

/// All six parities at index n.  U,V,W are filled for every pattern;
/// systems with last sign +1 simply never read them.
inline StateVec state_parity(const Pattern& p, int n) {
    StateVec s;
    s.n = uint32_t(n);
    int x = 0, u = 0;
    for (int l = 0; l < n; ++l) {
        x ^= count_parity(p, Family::J, n, l);
        u ^= count_parity(p, Family::K, n, l);
    }
    s.set(0, x);
    s.set(1, count_parity(p, Family::J, n, n));
    s.set(2, count_parity(p, Family::J, n, n - 1));
    s.set(3, u);
    s.set(4, count_parity(p, Family::K, n, n));
    s.set(5, count_parity(p, Family::K, n, n - 1));
    return s;
}

namespace detail {

inline uint64_t count_exact_rec(const std::vector<uint32_t>& rowmask, int m, int row,
                                uint32_t used) {
    if (row == m) return 1;
    uint64_t total = 0;
    uint32_t avail = rowmask[row] & ~used;
    while (avail) {
        uint32_t bit = avail & (~avail + 1);
        avail ^= bit;
        total += count_exact_rec(rowmask, m, row + 1, used | bit);
    }
    return total;
}

}  // namespace detail

/// Exact count of permutations with i + sigma_i in family for i != l.
/// Backtracking; practical for m up to the configured brute bound.
inline uint64_t count_exact(const Pattern& p, Family fam, int m, int l, int max_brute = 12) {
    if (m > max_brute) throw std::invalid_argument("m exceeds brute-force bound");
    if (m < 1 || l < 0 || l > m) throw std::invalid_argument("bad (m, l)");
    std::vector<uint32_t> rowmask(m);
    for (int i = 0; i < m; ++i) {
        if (i == l) {
            rowmask[i] = (m == 32) ? ~0u : ((uint32_t(1) << m) - 1);
        } else {
            uint32_t mask = 0;
            for (int j = 0; j < m; ++j)
                if (in_family(p, fam, uint64_t(i) + j)) mask |= uint32_t(1) << j;
            rowmask[i] = mask;
        }
    }
    return detail::count_exact_rec(rowmask, m, 0, 0);
}

/// Exact X,Y,Z (family J) or U,V,W (family K) aggregates at index n.
struct ExactAggregates {
    uint64_t sum_all_l = 0;  // X_n or U_n
    uint64_t at_l_m = 0;     // Y_n or V_n
    uint64_t at_l_m1 = 0;    // Z_n or W_n
};

inline ExactAggregates exact_aggregates(const Pattern& p, Family fam, int n,
                                        int max_brute = 12) {
    ExactAggregates a;
    for (int l = 0; l < n; ++l) a.sum_all_l += count_exact(p, fam, n, l, max_brute);
    a.at_l_m = count_exact(p, fam, n, n, max_brute);
    a.at_l_m1 = count_exact(p, fam, n, n - 1, max_brute);
    return a;
}

namespace detail {

struct TypeBruteCtx {
    const Pattern* p;
    Family fam;
    int d, m, l;  // l == m means no relaxed row
    const std::vector<int>* letters;  // s_0..s_{d-1} (+ tail when l < m)
    std::vector<int> unsoc_class;     // bottom class of the unsociable seen per block, or -1
    int parity = 0;
};

inline void count_type_rec(TypeBruteCtx& ctx, int row, uint32_t used) {
    const int d = ctx.d, m = ctx.m;
    if (row == m) {
        for (int c = 0; c < d; ++c) {
            int want = (*ctx.letters)[c];
            int friendly = d - 1 - c;
            if (want == friendly) {
                if (ctx.unsoc_class[c] != -1) return;
            } else {
                if (ctx.unsoc_class[c] != want) return;
            }
        }
        ctx.parity ^= 1;
        return;
    }
    int ci = row % d;
    for (int j = 0; j < m; ++j) {
        if (used & (uint32_t(1) << j)) continue;
        int cj = j % d;
        if (row == ctx.l) {
            // specific biletter: bottom class must match the tail letter
            if (cj != (*ctx.letters)[d]) continue;
        } else {
            if (!in_family(*ctx.p, ctx.fam, uint64_t(row) + j)) continue;
            int cs = (ci + cj + 1) % d;
            if (cs != 0) {
                // unsociable occurrence: designated letter, at most one per block
                if ((*ctx.letters)[ci] != cj) continue;
                if (ctx.unsoc_class[ci] != -1) continue;
                ctx.unsoc_class[ci] = cj;
                count_type_rec(ctx, row + 1, used | (uint32_t(1) << j));
                ctx.unsoc_class[ci] = -1;
                continue;
            }
        }
        count_type_rec(ctx, row + 1, used | (uint32_t(1) << j));
    }
}

}  // namespace detail

/// Brute-force parity of one type's permutation set at concrete n:
/// PY counts J^t_{m,m}, PZ counts J^t_{m,m-1}, PX sums J^t_{m,l} over
/// l < m in residue class k.  `letters` is s_0..s_{d-1} plus the tail
/// for PZ/PX.  The constraint family generalizes the J-direction run.
inline int count_type_exact(const Pattern& p, Family fam, Kind kind, int h, int k,
                            const std::vector<int>& letters, int n, int max_brute = 12) {
    const int d = p.d();
    const int m = d * n + h;
    if (m > max_brute) throw std::invalid_argument("m exceeds brute-force bound");
    detail::TypeBruteCtx ctx;
    ctx.p = &p;
    ctx.fam = fam;
    ctx.d = d;
    ctx.m = m;
    ctx.letters = &letters;
    ctx.unsoc_class.assign(d, -1);
    auto run_l = [&](int l) {
        ctx.l = l;
        detail::count_type_rec(ctx, 0, 0);
    };
    if (kind == Kind::PY) {
        run_l(m);
    } else if (kind == Kind::PZ) {
        run_l(m - 1);
    } else {
        for (int l = k; l < m; l += d) run_l(l);
    }
    return ctx.parity;
}

}  // namespace oracle
}  // namespace apwen
