#pragma once

#include <cstdint>
#include <vector>

namespace apwen {

/// Square 0/1 matrix with bit-packed rows, 64 columns per word.
class Gf2Matrix {
public:
    explicit Gf2Matrix(int n) : n_(n), words_((n + 63) / 64), rows_(n * words_, 0) {}

    int size() const { return n_; }

    void set(int r, int c, int bit) {
        uint64_t mask = uint64_t(1) << (c % 64);
        if (bit)
            rows_[size_t(r) * words_ + c / 64] |= mask;
        else
            rows_[size_t(r) * words_ + c / 64] &= ~mask;
    }

    int get(int r, int c) const {
        return int((rows_[size_t(r) * words_ + c / 64] >> (c % 64)) & 1);
    }

    /// Determinant over GF(2) by row elimination.  Destroys a local copy.
    int det() const {
        std::vector<uint64_t> m = rows_;
        for (int col = 0; col < n_; ++col) {
            int w = col / 64;
            uint64_t mask = uint64_t(1) << (col % 64);
            int pivot = -1;
            for (int r = col; r < n_; ++r) {
                if (m[size_t(r) * words_ + w] & mask) {
                    pivot = r;
                    break;
                }
            }
            if (pivot < 0) return 0;
            if (pivot != col) {
                for (size_t k = 0; k < size_t(words_); ++k)
                    std::swap(m[size_t(col) * words_ + k], m[size_t(pivot) * words_ + k]);
            }
            for (int r = col + 1; r < n_; ++r) {
                if (m[size_t(r) * words_ + w] & mask) {
                    const uint64_t* src = &m[size_t(col) * words_];
                    uint64_t* dst = &m[size_t(r) * words_];
                    for (int k = w; k < words_; ++k) dst[k] ^= src[k];
                }
            }
        }
        return 1;
    }

private:
    int n_;
    int words_;
    std::vector<uint64_t> rows_;
};

}  // namespace apwen
