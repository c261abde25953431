#include "khovcss/f2.hpp"

#include "khovcss/errors.hpp"

#include <algorithm>
#include <bit>
#include <cassert>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace khovcss::f2 {

bool Rref::reduces_to_zero(BitVec& v) const {
    for (std::size_t j = 0; j < rank; ++j) {
        if (v.get(pivot_cols[j])) v.xor_words(mat.row(j));
    }
    return v.is_zero();
}

bool in_rowspace(const Rref& r, const BitVec& v) {
    BitVec w = v;
    return r.reduces_to_zero(w);
}

bool in_rowspace(const BitMatrix& m, const BitVec& v) {
    return in_rowspace(rref(m), v);
}

namespace serial {

Rref rref(const BitMatrix& m) {
    Rref out;
    out.mat = m;
    BitMatrix& a = out.mat;
    const std::size_t rows = a.rows(), cols = a.cols();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = rows;
        for (std::size_t i = r; i < rows; ++i) {
            if (a.get(i, c)) { piv = i; break; }
        }
        if (piv == rows) continue;
        a.swap_rows(r, piv);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i != r && a.get(i, c)) a.xor_rows(i, r);
        }
        out.pivot_cols.push_back(uint32_t(c));
        ++r;
    }
    out.rank = r;
    return out;
}

std::size_t rank(const BitMatrix& m) { return serial::rref(m).rank; }

} // namespace serial

// Table-batched full RREF. Pivots are discovered per 64-column window on a
// single-word panel with linear combination tracking over the window's raw
// pivot rows; the tracked combinations are then replayed onto the full rows
// in chunks of 8 via 256-entry XOR tables. Output is the canonical RREF,
// bitwise identical to serial::rref.
Rref rref(const BitMatrix& m) {
    Rref out;
    out.mat = m;
    BitMatrix& a = out.mat;
    const std::size_t rows = a.rows(), cols = a.cols(), words = a.words();
    if (rows == 0 || cols == 0) return out;

    std::vector<uint64_t> panel(rows), mask(rows);
    std::vector<uint64_t> rawpiv; // raw full rows of this window's pivots
    std::vector<uint64_t> table(256 * words);
    std::size_t r = 0;

    for (std::size_t wi = 0; wi < words && r < rows; ++wi) {
        for (std::size_t i = 0; i < rows; ++i) {
            panel[i] = a.row(i)[wi];
            mask[i] = 0;
        }
        const int wbits = int(std::min<std::size_t>(64, cols - wi * 64));
        std::size_t npiv = 0;
        int pivbit[64];

        for (int b = 0; b < wbits; ++b) {
            std::size_t piv = rows;
            for (std::size_t i = r + npiv; i < rows; ++i) {
                if ((panel[i] >> b) & 1) { piv = i; break; }
            }
            if (piv == rows) continue;
            std::size_t p = r + npiv;
            a.swap_rows(p, piv);
            std::swap(panel[p], panel[piv]);
            std::swap(mask[p], mask[piv]);
            for (std::size_t i = 0; i < rows; ++i) {
                if (i != p && ((panel[i] >> b) & 1)) {
                    panel[i] ^= panel[p];
                    mask[i] ^= mask[p] | (uint64_t(1) << npiv);
                }
            }
            pivbit[npiv] = b;
            ++npiv;
        }
        if (npiv == 0) continue;

        // Snapshot raw pivot rows; all replay combinations refer to these.
        rawpiv.assign(npiv * words, 0);
        for (std::size_t j = 0; j < npiv; ++j)
            std::copy_n(a.row(r + j), words, &rawpiv[j * words]);

        // Finalize pivot rows themselves.
        for (std::size_t j = 0; j < npiv; ++j) {
            uint64_t mk = mask[r + j];
            uint64_t* dst = a.row(r + j);
            while (mk) {
                int k = std::countr_zero(mk);
                mk &= mk - 1;
                const uint64_t* src = &rawpiv[std::size_t(k) * words];
                for (std::size_t q = 0; q < words; ++q) dst[q] ^= src[q];
            }
        }

        // Replay onto all other rows, 8 pivots per table.
        for (std::size_t chunk = 0; chunk * 8 < npiv; ++chunk) {
            const std::size_t cbase = chunk * 8;
            const std::size_t csize = std::min<std::size_t>(8, npiv - cbase);
            std::fill(table.begin(), table.begin() + std::ptrdiff_t((1u << csize) * words), 0);
            for (uint32_t t = 1; t < (1u << csize); ++t) {
                uint32_t low = t & (t - 1);
                int k = std::countr_zero(t);
                const uint64_t* prev = &table[low * words];
                const uint64_t* add = &rawpiv[(cbase + std::size_t(k)) * words];
                uint64_t* dst = &table[t * words];
                for (std::size_t q = 0; q < words; ++q) dst[q] = prev[q] ^ add[q];
            }
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
            for (std::ptrdiff_t ii = 0; ii < std::ptrdiff_t(rows); ++ii) {
                std::size_t i = std::size_t(ii);
                if (i >= r && i < r + npiv) continue;
                uint32_t idx = uint32_t((mask[i] >> cbase) & ((1u << csize) - 1));
                if (!idx) continue;
                const uint64_t* src = &table[idx * words];
                uint64_t* dst = a.row(i);
                for (std::size_t q = 0; q < words; ++q) dst[q] ^= src[q];
            }
        }

        for (std::size_t j = 0; j < npiv; ++j)
            out.pivot_cols.push_back(uint32_t(wi * 64 + std::size_t(pivbit[j])));
        r += npiv;
    }
    out.rank = r;
    return out;
}

std::size_t rank(const BitMatrix& m) { return rref(m).rank; }

Rref rref_with_column_order(const BitMatrix& m, const std::vector<uint32_t>& col_order) {
    Rref out;
    out.mat = m;
    BitMatrix& a = out.mat;
    const std::size_t rows = a.rows();
    std::size_t r = 0;
    for (uint32_t c : col_order) {
        if (r >= rows) break;
        std::size_t piv = rows;
        for (std::size_t i = r; i < rows; ++i) {
            if (a.get(i, c)) { piv = i; break; }
        }
        if (piv == rows) continue;
        a.swap_rows(r, piv);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i != r && a.get(i, c)) a.xor_rows(i, r);
        }
        out.pivot_cols.push_back(c);
        ++r;
    }
    out.rank = r;
    return out;
}

namespace {

BitMatrix kernel_from_rref(const Rref& rr, std::size_t cols) {
    std::vector<bool> is_pivot(cols, false);
    for (uint32_t c : rr.pivot_cols) is_pivot[c] = true;
    std::vector<uint32_t> free_cols;
    for (std::size_t c = 0; c < cols; ++c)
        if (!is_pivot[c]) free_cols.push_back(uint32_t(c));
    BitMatrix k(free_cols.size(), cols);
    for (std::size_t fi = 0; fi < free_cols.size(); ++fi) {
        k.set(fi, free_cols[fi], true);
        for (std::size_t j = 0; j < rr.rank; ++j) {
            if (rr.mat.get(j, free_cols[fi])) k.set(fi, rr.pivot_cols[j], true);
        }
    }
    return k;
}

} // namespace

BitMatrix kernel_basis(const BitMatrix& m) {
    if (m.rows() == 0) return BitMatrix::identity(m.cols());
    return kernel_from_rref(rref(m), m.cols());
}

namespace serial {
BitMatrix kernel_basis(const BitMatrix& m) {
    if (m.rows() == 0) return BitMatrix::identity(m.cols());
    return kernel_from_rref(serial::rref(m), m.cols());
}
} // namespace serial

std::vector<BitVec> complement_rows(const BitMatrix& base, const BitMatrix& sub) {
    Rref rb = rref(base);
    std::vector<BitVec> extra;       // reduced forms
    std::vector<std::size_t> extra_pivot;
    std::vector<BitVec> out;
    for (std::size_t i = 0; i < sub.rows(); ++i) {
        BitVec v = sub.row_vec(i);
        rb.reduces_to_zero(v);
        for (std::size_t j = 0; j < extra.size(); ++j)
            if (v.get(extra_pivot[j])) v.xor_vec(extra[j]);
        if (v.is_zero()) continue;
        std::size_t p = 0;
        while (!v.get(p)) ++p;
        extra.push_back(v);
        extra_pivot.push_back(p);
        out.push_back(sub.row_vec(i));
    }
    return out;
}

} // namespace khovcss::f2
