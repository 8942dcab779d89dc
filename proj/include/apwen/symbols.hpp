#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

namespace apwen {

/// Which of the two complementary index sets constrains a permutation.
enum class Family { J, K };

/// The three enumeration directions of the recurrence generator:
/// PY targets Y (l = m), PZ targets Z (l = m-1), PX targets X (l summed
/// over a residue class).
enum class Kind { PY, PZ, PX };

inline const char* kind_name(Kind k) {
    switch (k) {
        case Kind::PY: return "PY";
        case Kind::PZ: return "PZ";
        default: return "PX";
    }
}

/// One of the 12 symbols {X,Y,Z,U,V,W} x {n, n+1}.
///
/// Encoded as a bit index 0..11: family + 6*shift.  Family order is
/// X,Y,Z,U,V,W; shift 0 is index n, shift 1 is index n+1 (rendered 'm').
struct SymVar {
    int family = 0;  // 0..5 = X,Y,Z,U,V,W
    int shift = 0;   // 0 = n, 1 = n+1

    int bit() const { return family + 6 * shift; }
    static SymVar from_bit(int b) { return SymVar{b % 6, b / 6}; }

    std::string name() const {
        static const char fam[] = "XYZUVW";
        return std::string(1, fam[family]) + (shift ? 'm' : 'n');
    }

    bool operator==(const SymVar&) const = default;
};

/// Sorting key giving family order X,Y,Z,U,V,W with shift n before m.
inline int symvar_order(int bit) { return (bit % 6) * 2 + bit / 6; }

using Monomial = uint16_t;  // 12-bit set of SymVar bits

inline std::string monomial_text(Monomial m) {
    std::vector<int> bits;
    for (int b = 0; b < 12; ++b)
        if (m & (Monomial(1) << b)) bits.push_back(b);
    std::sort(bits.begin(), bits.end(),
              [](int a, int b) { return symvar_order(a) < symvar_order(b); });
    std::string out;
    for (size_t i = 0; i < bits.size(); ++i) {
        if (i) out += ' ';
        out += SymVar::from_bit(bits[i]).name();
    }
    if (out.empty()) out = "1";
    return out;
}

/// Multilinear polynomial over GF(2) in the 12 symbols: a set of
/// monomials, addition = symmetric difference.
class Gf2Poly {
public:
    Gf2Poly() = default;

    bool empty() const { return monomials_.empty(); }
    size_t size() const { return monomials_.size(); }
    const std::vector<Monomial>& monomials() const { return monomials_; }

    /// XOR a monomial in or out.
    void toggle(Monomial m) {
        auto it = std::lower_bound(monomials_.begin(), monomials_.end(), m);
        if (it != monomials_.end() && *it == m)
            monomials_.erase(it);
        else
            monomials_.insert(it, m);
    }

    Gf2Poly& operator^=(const Gf2Poly& other) {
        for (Monomial m : other.monomials_) toggle(m);
        return *this;
    }

    /// Evaluate at a 12-bit assignment (bit b = value of SymVar b).
    int eval(uint16_t assignment) const {
        int acc = 0;
        for (Monomial m : monomials_)
            acc ^= ((assignment & m) == m) ? 1 : 0;
        return acc;
    }

    /// Canonical rendering: monomial strings sorted lexicographically,
    /// joined by " + "; "0" when empty.
    std::string text() const {
        if (monomials_.empty()) return "0";
        std::vector<std::string> terms;
        terms.reserve(monomials_.size());
        for (Monomial m : monomials_) terms.push_back(monomial_text(m));
        std::sort(terms.begin(), terms.end());
        std::string out;
        for (size_t i = 0; i < terms.size(); ++i) {
            if (i) out += " + ";
            out += terms[i];
        }
        return out;
    }

    bool operator==(const Gf2Poly&) const = default;

private:
    std::vector<Monomial> monomials_;  // kept sorted
};

}  // namespace apwen
