#include "ldpcdes/gf2.hpp"

#include <algorithm>

namespace ldpcdes::gf2 {

Rref rref(BitMatrix m) {
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
        int pivot = -1;
        for (int i = r; i < m.rows(); ++i) {
            if (m.get(i, c)) {
                pivot = i;
                break;
            }
        }
        if (pivot < 0) continue;
        m.swap_rows(r, pivot);
        for (int i = 0; i < m.rows(); ++i) {
            if (i != r && m.get(i, c)) m.xor_row(i, r);
        }
        pivots.push_back(c);
        ++r;
    }
    return {std::move(m), std::move(pivots)};
}

int rank(const BitMatrix& m) { return static_cast<int>(rref(m).pivot_cols.size()); }

BitMatrix nullspace(const BitMatrix& m) {
    const Rref rr = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (int c : rr.pivot_cols) is_pivot[c] = true;

    std::vector<int> free_cols;
    for (int c = 0; c < m.cols(); ++c)
        if (!is_pivot[c]) free_cols.push_back(c);

    BitMatrix basis(static_cast<int>(free_cols.size()), m.cols());
    for (size_t i = 0; i < free_cols.size(); ++i) {
        const int f = free_cols[i];
        basis.set(static_cast<int>(i), f, true);
        for (size_t p = 0; p < rr.pivot_cols.size(); ++p) {
            if (rr.m.get(static_cast<int>(p), f)) basis.set(static_cast<int>(i), rr.pivot_cols[p], true);
        }
    }
    return basis;
}

BitMatrix multiply(const BitMatrix& a, const BitMatrix& b) {
    BitMatrix out(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) {
            if (a.get(i, j)) {
                auto dst = out.row(i);
                auto src = b.row(j);
                for (size_t w = 0; w < dst.size(); ++w) dst[w] ^= src[w];
            }
        }
    }
    return out;
}

BitMatrix transpose(const BitMatrix& m) {
    BitMatrix out(m.cols(), m.rows());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            if (m.get(i, j)) out.set(j, i, true);
    return out;
}

bool solve_erasures(const BitMatrix& h, std::vector<Bit>& word) {
    std::vector<int> erased;
    for (size_t i = 0; i < word.size(); ++i)
        if (word[i] == Bit::Erased) erased.push_back(static_cast<int>(i));
    if (erased.empty()) {
        // Nothing to solve; still report inconsistency of a fully known word.
        for (int r = 0; r < h.rows(); ++r) {
            bool parity = false;
            for (int c = 0; c < h.cols(); ++c)
                if (h.get(r, c) && word[c] == Bit::One) parity = !parity;
            if (parity) return false;
        }
        return true;
    }

    const int ne = static_cast<int>(erased.size());
    BitMatrix sys(h.rows(), ne + 1);  // augmented column = syndrome of knowns
    for (int r = 0; r < h.rows(); ++r) {
        bool rhs = false;
        for (int c = 0; c < h.cols(); ++c) {
            if (!h.get(r, c)) continue;
            if (word[c] == Bit::One)
                rhs = !rhs;
            else if (word[c] == Bit::Erased) {
                const int e = static_cast<int>(std::lower_bound(erased.begin(), erased.end(), c) - erased.begin());
                sys.flip(r, e);
            }
        }
        sys.set(r, ne, rhs);
    }

    const Rref rr = rref(std::move(sys));
    // Inconsistency: a pivot in the augmented column.
    if (!rr.pivot_cols.empty() && rr.pivot_cols.back() == ne) return false;

    for (size_t p = 0; p < rr.pivot_cols.size(); ++p) {
        const int pc = rr.pivot_cols[p];
        bool forced = true;
        for (int c = 0; c < ne; ++c) {
            if (c != pc && rr.m.get(static_cast<int>(p), c)) {
                forced = false;
                break;
            }
        }
        if (forced) word[erased[pc]] = rr.m.get(static_cast<int>(p), ne) ? Bit::One : Bit::Zero;
    }
    return true;
}

}  // namespace ldpcdes::gf2
