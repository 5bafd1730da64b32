#pragma once

// Dense GF(2) linear algebra on 64-bit words. Everything here operates on
// matrices that fit comfortably in memory (component codes, expanded
// parity-check matrices up to a few thousand columns).

#include <cstdint>
#include <span>
#include <vector>

#include "ldpcdes/common.hpp"

namespace ldpcdes::gf2 {

class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(int rows, int cols)
        : rows_(rows), cols_(cols), words_per_row_((cols + 63) / 64), bits_(static_cast<size_t>(rows) * words_per_row_, 0) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    bool get(int r, int c) const { return (word(r, c / 64) >> (c % 64)) & 1u; }
    void set(int r, int c, bool v) {
        std::uint64_t& w = word(r, c / 64);
        const std::uint64_t m = std::uint64_t{1} << (c % 64);
        w = v ? (w | m) : (w & ~m);
    }
    void flip(int r, int c) { word(r, c / 64) ^= std::uint64_t{1} << (c % 64); }

    void xor_row(int dst, int src) {
        std::uint64_t* d = row_ptr(dst);
        const std::uint64_t* s = row_ptr(src);
        for (int w = 0; w < words_per_row_; ++w) d[w] ^= s[w];
    }
    void swap_rows(int a, int b) {
        if (a == b) return;
        std::uint64_t* pa = row_ptr(a);
        std::uint64_t* pb = row_ptr(b);
        for (int w = 0; w < words_per_row_; ++w) std::swap(pa[w], pb[w]);
    }
    bool row_empty(int r) const {
        const std::uint64_t* p = row_ptr(r);
        for (int w = 0; w < words_per_row_; ++w)
            if (p[w]) return false;
        return true;
    }

    std::span<const std::uint64_t> row(int r) const { return {row_ptr(r), static_cast<size_t>(words_per_row_)}; }
    std::span<std::uint64_t> row(int r) { return {row_ptr(r), static_cast<size_t>(words_per_row_)}; }

    bool operator==(const BitMatrix& o) const = default;

private:
    std::uint64_t& word(int r, int w) { return bits_[static_cast<size_t>(r) * words_per_row_ + w]; }
    const std::uint64_t& word(int r, int w) const { return bits_[static_cast<size_t>(r) * words_per_row_ + w]; }
    std::uint64_t* row_ptr(int r) { return bits_.data() + static_cast<size_t>(r) * words_per_row_; }
    const std::uint64_t* row_ptr(int r) const { return bits_.data() + static_cast<size_t>(r) * words_per_row_; }

    int rows_ = 0;
    int cols_ = 0;
    int words_per_row_ = 0;
    std::vector<std::uint64_t> bits_;
};

struct Rref {
    BitMatrix m;
    std::vector<int> pivot_cols;  // ascending
};

// Reduced row echelon form (zero rows last).
Rref rref(BitMatrix m);

int rank(const BitMatrix& m);

// Basis of the right null space {x : m xᵀ = 0}, one vector per row.
BitMatrix nullspace(const BitMatrix& m);

BitMatrix multiply(const BitMatrix& a, const BitMatrix& b);
BitMatrix transpose(const BitMatrix& m);

// MAP erasure solve against an arbitrary parity-check matrix. Known
// positions of `word` are kept; an erased position is filled only when all
// solutions of H·x = 0 consistent with the known positions agree on it.
// Returns false when no consistent codeword exists (word untouched).
bool solve_erasures(const BitMatrix& h, std::vector<Bit>& word);

}  // namespace ldpcdes::gf2
