#include "khovcss/f2.hpp"

#include <doctest.h>

#include <random>

using namespace khovcss;
using f2::BitMatrix;
using f2::BitVec;

namespace {

BitMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols,
                        double density = 0.5) {
    BitMatrix m(rows, cols);
    std::bernoulli_distribution coin(density);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            if (coin(rng)) m.set(r, c, true);
    return m;
}

// all-vectors oracle: min weight in ker(a) \ rowspace(b)
uint64_t naive_min_nontrivial(const BitMatrix& a, const BitMatrix& b) {
    std::size_t n = a.cols();
    REQUIRE(n <= 16);
    f2::Rref rb = f2::rref(b);
    uint64_t best = UINT64_MAX;
    for (uint32_t mask = 1; mask < (1u << n); ++mask) {
        BitVec v(n);
        for (std::size_t i = 0; i < n; ++i)
            if ((mask >> i) & 1) v.set(i, true);
        if (!a.mul_vec(v).is_zero()) continue;
        BitVec w = v;
        if (rb.reduces_to_zero(w)) continue;
        best = std::min(best, uint64_t(v.popcount()));
    }
    return best;
}

} // namespace

TEST_CASE("bitmatrix basics") {
    BitMatrix m = BitMatrix::from_rows({"1010", "0110"});
    CHECK(m.get(0, 0));
    CHECK_FALSE(m.get(0, 1));
    CHECK(m.row_weight(0) == 2);
    CHECK(m.col_weight(1) == 1);
    BitMatrix t = m.transpose();
    CHECK(t.rows() == 4);
    CHECK(t.get(2, 0));
    CHECK(t.transpose() == m);

    BitMatrix id = BitMatrix::identity(4);
    CHECK(m.mul(id) == m);

    BitVec v(4);
    v.set(0, true);
    v.set(2, true);
    BitVec mv = m.mul_vec(v);
    CHECK(mv.get(0) == false); // 1+1
    CHECK(mv.get(1) == true);
}

TEST_CASE("transpose on wide random matrices") {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 5; ++t) {
        BitMatrix m = random_matrix(rng, 70 + t * 31, 130 + t * 17);
        CHECK(m.transpose().transpose() == m);
    }
}

TEST_CASE("lex order of bit vectors reads column 0 first") {
    BitVec a(70), b(70);
    a.set(3, true);
    b.set(5, true);
    CHECK(a.lex_less(b) == false); // 0001... > 000001... at position 3
    CHECK(b.lex_less(a) == true);
    BitVec c(70), d(70);
    c.set(69, true);
    CHECK(d.lex_less(c)); // zero vector is smallest among these two
}

TEST_CASE("rank and kernel on simple cases") {
    BitMatrix m = BitMatrix::from_rows({"1111"});
    CHECK(f2::rank(m) == 1);
    BitMatrix k = f2::kernel_basis(m);
    CHECK(k.rows() == 3);
    for (std::size_t r = 0; r < k.rows(); ++r) CHECK(m.mul_vec(k.row_vec(r)).is_zero());

    BitVec v(4);
    v.set(0, true);
    v.set(1, true);
    CHECK_FALSE(f2::in_rowspace(m, v)); // (1,1,0,0) not a multiple of (1,1,1,1)
    v.set(2, true);
    v.set(3, true);
    CHECK(f2::in_rowspace(m, v));
}

TEST_CASE("batched rref equals the serial reference") {
    std::mt19937_64 rng(42);
    for (int t = 0; t < 20; ++t) {
        std::size_t rows = 1 + rng() % 90, cols = 1 + rng() % 140;
        BitMatrix m = random_matrix(rng, rows, cols, 0.3);
        f2::Rref fast = f2::rref(m);
        f2::Rref slow = f2::serial::rref(m);
        CHECK(fast.rank == slow.rank);
        CHECK(fast.pivot_cols == slow.pivot_cols);
        CHECK(fast.mat == slow.mat);
        CHECK(f2::kernel_basis(m) == f2::serial::kernel_basis(m));
    }
}

TEST_CASE("rref handles shapes around word boundaries") {
    std::mt19937_64 rng(11);
    for (std::size_t cols : {63u, 64u, 65u, 128u, 129u}) {
        BitMatrix m = random_matrix(rng, 80, cols, 0.4);
        CHECK(f2::rref(m).mat == f2::serial::rref(m).mat);
    }
}

TEST_CASE("kernel basis dimension formula") {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 10; ++t) {
        BitMatrix m = random_matrix(rng, 30, 50, 0.2);
        CHECK(f2::kernel_basis(m).rows() == 50 - f2::rank(m));
    }
}

TEST_CASE("min weight engine agrees with the all-vectors oracle") {
    std::mt19937_64 rng(99);
    int interesting = 0;
    for (int t = 0; t < 40; ++t) {
        std::size_t n = 6 + rng() % 9;
        BitMatrix a = random_matrix(rng, 3 + rng() % 4, n, 0.35);
        // boundary rows inside ker(a): random combinations of the kernel basis
        BitMatrix kb = f2::kernel_basis(a);
        std::size_t nb = kb.rows() ? rng() % kb.rows() : 0;
        BitMatrix b(nb, n);
        for (std::size_t i = 0; i < nb; ++i) {
            BitVec acc(n);
            for (std::size_t j = 0; j < kb.rows(); ++j)
                if (rng() & 1) acc.xor_vec(kb.row_vec(j));
            b.set_row(i, acc);
        }
        uint64_t oracle = naive_min_nontrivial(a, b);
        f2::MinWeightResult got = f2::min_nontrivial_weight(a, b);
        f2::MinWeightResult ser = f2::serial::min_nontrivial_weight(a, b);
        if (oracle == UINT64_MAX) {
            CHECK(got.infinite);
            CHECK(ser.infinite);
        } else {
            ++interesting;
            CHECK(got.exact);
            CHECK(got.upper == oracle);
            CHECK(ser.upper == oracle);
            CHECK(got.witness.popcount() == oracle);
            CHECK(a.mul_vec(got.witness).is_zero());
        }
    }
    CHECK(interesting > 10);
}

TEST_CASE("information-set search certifies small kernels too") {
    std::mt19937_64 rng(123);
    for (int t = 0; t < 10; ++t) {
        std::size_t n = 10 + rng() % 5;
        BitMatrix a = random_matrix(rng, 4, n, 0.4);
        BitMatrix b(0, n);
        uint64_t oracle = naive_min_nontrivial(a, b);
        if (oracle == UINT64_MAX) continue;
        f2::MinWeightOptions opts;
        opts.enum_budget = 0; // force the information-set path
        f2::MinWeightResult got = f2::min_nontrivial_weight(a, b, opts);
        CHECK(got.exact);
        CHECK(got.upper == oracle);
    }
}

TEST_CASE("bounded mode returns a certified lower bound") {
    // columns are the numbers 1..40: distinct and nonzero, so the kernel has
    // no vectors of weight one or two
    BitMatrix a(8, 40);
    for (std::size_t c = 0; c < 40; ++c)
        for (std::size_t r = 0; r < 8; ++r)
            if (((c + 1) >> r) & 1) a.set(r, c, true);
    BitMatrix b(0, 40);
    f2::MinWeightOptions opts;
    opts.enum_budget = 0;
    opts.bounded = true;
    opts.wmax = 2;
    f2::MinWeightResult got = f2::min_nontrivial_weight(a, b, opts);
    CHECK(got.certified_lb == 3); // all info-set weights <= 2 exhausted
    f2::MinWeightResult full = f2::min_nontrivial_weight(a, b);
    CHECK(full.exact);
    CHECK(full.upper == 3); // e.g. columns valued 1, 2, 3
    CHECK(full.upper >= got.certified_lb);
}

TEST_CASE("deterministic witness tie-break") {
    BitMatrix a(0, 6); // whole space
    BitMatrix b(0, 6);
    f2::MinWeightResult got = f2::min_nontrivial_weight(a, b);
    CHECK(got.exact);
    CHECK(got.upper == 1);
    // lexicographically smallest weight-1 vector is 000001
    CHECK(got.witness.get(5));
}
