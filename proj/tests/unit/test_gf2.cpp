#include <doctest.h>

#include <ldpcdes/gf2.hpp>
#include <ldpcdes/rng.hpp>

using namespace ldpcdes;
using gf2::BitMatrix;

namespace {

BitMatrix random_matrix(Rng& rng, int rows, int cols, double density = 0.4) {
    BitMatrix m(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            if (rng.uniform() < density) m.set(r, c, true);
    return m;
}

}  // namespace

TEST_CASE("rref pivots are unit columns") {
    Rng rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const BitMatrix m = random_matrix(rng, 5, 9);
        const auto rr = gf2::rref(m);
        for (size_t p = 0; p < rr.pivot_cols.size(); ++p) {
            for (int r = 0; r < rr.m.rows(); ++r)
                CHECK(rr.m.get(r, rr.pivot_cols[p]) == (r == static_cast<int>(p)));
        }
    }
}

TEST_CASE("rank plus nullity equals columns and nullspace annihilates") {
    Rng rng(13);
    for (int trial = 0; trial < 50; ++trial) {
        const BitMatrix m = random_matrix(rng, 6, 11);
        const int r = gf2::rank(m);
        const BitMatrix ns = gf2::nullspace(m);
        CHECK(r + ns.rows() == m.cols());
        const BitMatrix prod = gf2::multiply(ns, gf2::transpose(m));
        for (int i = 0; i < prod.rows(); ++i) CHECK(prod.row_empty(i));
    }
}

TEST_CASE("transpose and multiply agree with direct evaluation") {
    Rng rng(99);
    const BitMatrix a = random_matrix(rng, 4, 6);
    const BitMatrix b = random_matrix(rng, 6, 5);
    const BitMatrix ab = gf2::multiply(a, b);
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 5; ++j) {
            bool acc = false;
            for (int k = 0; k < 6; ++k) acc ^= (a.get(i, k) && b.get(k, j));
            CHECK(ab.get(i, j) == acc);
        }
    }
    const BitMatrix at = gf2::transpose(a);
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 6; ++k) CHECK(at.get(k, i) == a.get(i, k));
}

TEST_CASE("solve_erasures fills forced positions only") {
    // x0 + x1 = 0, x1 + x2 = 0: x = (b, b, b)
    BitMatrix h(2, 3);
    h.set(0, 0, true);
    h.set(0, 1, true);
    h.set(1, 1, true);
    h.set(1, 2, true);

    std::vector<Bit> w{Bit::One, Bit::Erased, Bit::Erased};
    CHECK(gf2::solve_erasures(h, w));
    CHECK(w == std::vector<Bit>{Bit::One, Bit::One, Bit::One});

    std::vector<Bit> all_erased{Bit::Erased, Bit::Erased, Bit::Erased};
    CHECK(gf2::solve_erasures(h, all_erased));
    CHECK(all_erased == std::vector<Bit>{Bit::Erased, Bit::Erased, Bit::Erased});

    std::vector<Bit> inconsistent{Bit::One, Bit::Zero, Bit::Erased};
    CHECK_FALSE(gf2::solve_erasures(h, inconsistent));
}
