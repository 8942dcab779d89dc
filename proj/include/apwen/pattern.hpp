#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace apwen {

/// A finite +/-1 word v with v[0] = +1, plus its derived index classes.
///
/// P collects the positions (in [1, d-1]) where adjacent signs differ,
/// Q the positions where they agree.  The infinite product sequence
/// f_k and the sets J, K are all derived from this data.
class Pattern {
public:
    explicit Pattern(std::vector<int> signs) : coeffs_(std::move(signs)) {
        if (coeffs_.size() < 2)
            throw std::invalid_argument("pattern must have length >= 2");
        if (coeffs_.front() != 1)
            throw std::invalid_argument("pattern must start with +1");
        for (int s : coeffs_)
            if (s != 1 && s != -1)
                throw std::invalid_argument("pattern entries must be +1 or -1");
        for (int i = 1; i < d(); ++i) {
            if (coeffs_[i - 1] != coeffs_[i])
                p_.push_back(i);
            else
                q_.push_back(i);
        }
        in_p_.assign(d(), false);
        for (int i : p_) in_p_[i] = true;
    }

    // Accepts "+--" sign words or "1,-1,-1" comma lists.
    static Pattern parse(const std::string& text) {
        std::vector<int> signs;
        if (text.find(',') != std::string::npos || text.find('1') != std::string::npos) {
            size_t pos = 0;
            while (pos < text.size()) {
                size_t comma = text.find(',', pos);
                std::string tok = text.substr(pos, comma == std::string::npos ? std::string::npos
                                                                              : comma - pos);
                size_t b = tok.find_first_not_of(" \t");
                size_t e = tok.find_last_not_of(" \t");
                if (b == std::string::npos)
                    throw std::invalid_argument("empty entry in pattern list");
                tok = tok.substr(b, e - b + 1);
                if (tok == "1" || tok == "+1")
                    signs.push_back(1);
                else if (tok == "-1")
                    signs.push_back(-1);
                else
                    throw std::invalid_argument("bad pattern entry '" + tok + "'");
                if (comma == std::string::npos) break;
                pos = comma + 1;
            }
        } else {
            for (char c : text) {
                if (c == '+')
                    signs.push_back(1);
                else if (c == '-')
                    signs.push_back(-1);
                else
                    throw std::invalid_argument(std::string("bad pattern symbol '") + c + "'");
            }
        }
        return Pattern(std::move(signs));
    }

    int d() const { return static_cast<int>(coeffs_.size()); }
    int coeff(int i) const { return coeffs_[i]; }
    int last_sign() const { return coeffs_.back(); }
    const std::vector<int>& coeffs() const { return coeffs_; }
    const std::vector<int>& P() const { return p_; }
    const std::vector<int>& Q() const { return q_; }
    bool in_P(int i) const { return i >= 1 && i < d() && in_p_[i]; }
    bool in_Q(int i) const { return i >= 1 && i < d() && !in_p_[i]; }

    /// Canonical sign-word rendering, e.g. "+--".
    std::string text() const {
        std::string s;
        for (int c : coeffs_) s += (c == 1 ? '+' : '-');
        return s;
    }

    /// f_k of the product sequence: f_0 = 1, f_{dn+i} = v_i * f_n.
    int sign_at(uint64_t k) const {
        int s = 1;
        while (k > 0) {
            s *= coeffs_[k % d()];
            k /= d();
        }
        return s;
    }

    /// delta_t = |f_t - f_{t+1}| / 2, in {0,1}.
    int delta(uint64_t t) const { return sign_at(t) != sign_at(t + 1) ? 1 : 0; }

    /// Membership of t in J via delta (delta_t = 1 iff t in J).
    bool in_J(uint64_t t) const { return delta(t) == 1; }
    bool in_K(uint64_t t) const { return !in_J(t); }

    /// Membership of t in J via the arithmetic definition: write
    /// t+1 = (dn+l) * d^k with l in [1, d-1].  For last sign +1, t in J
    /// iff l in P; for last sign -1, iff (l in P, k even) or (l in Q, k odd).
    bool in_J_arith(uint64_t t) const {
        uint64_t u = t + 1;
        uint64_t k = 0;
        while (u % d() == 0) {
            u /= d();
            ++k;
        }
        int l = static_cast<int>(u % d());
        if (last_sign() == 1) return in_P(l);
        return (k % 2 == 0) ? in_P(l) : in_Q(l);
    }

private:
    std::vector<int> coeffs_;
    std::vector<int> p_, q_;
    std::vector<bool> in_p_;
};

}  // namespace apwen
