#pragma once

#include "khovcss/bitmatrix.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace khovcss::f2 {

/// Reduced row echelon form plus pivot bookkeeping.
struct Rref {
    BitMatrix mat;                    // full RREF of the input (same shape)
    std::vector<uint32_t> pivot_cols; // one per pivot row, ascending
    std::size_t rank = 0;

    /// Reduce v against the pivot rows in place; returns true if v ends zero,
    /// i.e. v was in the row space.
    bool reduces_to_zero(BitVec& v) const;
};

/// Full RREF. Uses table-batched elimination (method of four Russians) with
/// OpenMP row updates; output is the canonical RREF (leftmost pivots).
Rref rref(const BitMatrix& m);

/// RREF that tries pivot columns in the given order (used for information-set
/// construction). Plain elimination; intended for modest sizes.
Rref rref_with_column_order(const BitMatrix& m, const std::vector<uint32_t>& col_order);

std::size_t rank(const BitMatrix& m);

/// Basis of the right null space {x : m x = 0}, rows in reduced echelon form.
/// Deterministic: derived from the canonical RREF.
BitMatrix kernel_basis(const BitMatrix& m);

bool in_rowspace(const Rref& r, const BitVec& v);
bool in_rowspace(const BitMatrix& m, const BitVec& v);

namespace serial {
/// Schoolbook reference implementations; must agree with the batched ones
/// bit for bit. Kept for testing and benchmarking.
Rref rref(const BitMatrix& m);
std::size_t rank(const BitMatrix& m);
BitMatrix kernel_basis(const BitMatrix& m);
} // namespace serial

// ---------------------------------------------------------------------------
// Minimum weight of a vector in ker(A) \ rowspace(B) ("nontrivial" vectors).
// ---------------------------------------------------------------------------

struct MinWeightOptions {
    uint32_t enum_budget = 24;   // full kernel enumeration when dim ker <= this
    uint32_t wmax = 6;           // bounded mode: exhaust info-set weight <= wmax
    bool bounded = false;        // stop at wmax even if not certified
    uint64_t max_work = uint64_t(1) << 33; // cap on candidates per weight pass
};

struct MinWeightResult {
    bool found = false;         // some nontrivial vector was seen
    bool exact = false;         // lower bound certifies the upper bound
    bool infinite = false;      // ker(A) = rowspace(B): nothing nontrivial
    uint64_t upper = 0;         // best weight found (valid when found)
    uint64_t certified_lb = 1;  // all nontrivial vectors have weight >= this
    BitVec witness;             // lexicographically smallest at weight `upper`
    uint64_t enumerated = 0;
    const char* method = "";

    uint64_t value() const { return upper; } // convenience, valid when exact
};

/// A: matrix whose kernel is the ambient space of interest (may have 0 rows,
/// meaning the full space). B: rows spanning the excluded subspace, which must
/// lie inside ker(A). Deterministic under any thread count: parallel workers
/// reduce with (weight, lex) min.
MinWeightResult min_nontrivial_weight(const BitMatrix& a, const BitMatrix& b,
                                      const MinWeightOptions& opts = {});

namespace serial {
/// Reference: plain kernel-coset enumeration, no batching, no OpenMP.
/// Requires dim ker(A) small enough to enumerate.
MinWeightResult min_nontrivial_weight(const BitMatrix& a, const BitMatrix& b,
                                      uint32_t max_kernel_dim = 22);
} // namespace serial

/// Rows of `sub` that are independent modulo rowspace(base); the returned
/// rows are the original ones (not reduced). Deterministic.
std::vector<BitVec> complement_rows(const BitMatrix& base, const BitMatrix& sub);

} // namespace khovcss::f2
