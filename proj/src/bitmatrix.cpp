#include "khovcss/bitmatrix.hpp"

#include "khovcss/errors.hpp"

#include <algorithm>
#include <bit>

namespace khovcss::f2 {

namespace {

// Bit-reverse each 64-bit word; used to compare bit strings column-0-first.
inline uint64_t reverse_word(uint64_t x) {
    x = ((x & 0x5555555555555555ull) << 1) | ((x >> 1) & 0x5555555555555555ull);
    x = ((x & 0x3333333333333333ull) << 2) | ((x >> 2) & 0x3333333333333333ull);
    x = ((x & 0x0f0f0f0f0f0f0f0full) << 4) | ((x >> 4) & 0x0f0f0f0f0f0f0f0full);
    return __builtin_bswap64(x);
}

// 64x64 bit-block transpose (Hacker's Delight).
void transpose64(uint64_t a[64]) {
    uint64_t m = 0x00000000ffffffffull;
    for (int j = 32; j != 0; j >>= 1, m ^= m << j) {
        for (int k = 0; k < 64; k = (k + j + 1) & ~j) {
            uint64_t t = (a[k] ^ (a[k + j] >> j)) & m;
            a[k] ^= t;
            a[k + j] ^= t << j;
        }
    }
}

} // namespace

bool BitVec::lex_less(const BitVec& o) const {
    for (std::size_t k = 0; k < w_.size(); ++k) {
        if (w_[k] != o.w_[k]) return reverse_word(w_[k]) < reverse_word(o.w_[k]);
    }
    return false;
}

std::string BitVec::to_string() const {
    std::string s(n_, '0');
    for (std::size_t i = 0; i < n_; ++i) if (get(i)) s[i] = '1';
    return s;
}

BitMatrix BitMatrix::identity(std::size_t n) {
    BitMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
    return m;
}

BitMatrix BitMatrix::from_rows(const std::vector<std::string>& rows) {
    if (rows.empty()) return {};
    BitMatrix m(rows.size(), rows[0].size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != rows[0].size())
            throw StructuralError("from_rows: ragged rows");
        for (std::size_t c = 0; c < rows[r].size(); ++c)
            if (rows[r][c] == '1') m.set(r, c, true);
    }
    return m;
}

BitMatrix BitMatrix::transpose() const {
    BitMatrix t(cols_, rows_);
    const std::size_t rb = (rows_ + 63) / 64;
    uint64_t blk[64];
    for (std::size_t bi = 0; bi < rb; ++bi) {
        for (std::size_t bj = 0; bj < words_; ++bj) {
            for (int k = 0; k < 64; ++k) {
                std::size_t r = bi * 64 + std::size_t(k);
                blk[k] = r < rows_ ? row(r)[bj] : 0;
            }
            transpose64(blk);
            for (int k = 0; k < 64; ++k) {
                std::size_t c = bj * 64 + std::size_t(k);
                if (c < cols_) t.row(c)[bi] = blk[k];
            }
        }
    }
    return t;
}

BitMatrix BitMatrix::mul(const BitMatrix& o) const {
    if (cols_ != o.rows_) throw StructuralError("mul: dimension mismatch");
    BitMatrix out(rows_, o.cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        const uint64_t* a = row(r);
        uint64_t* dst = out.row(r);
        for (std::size_t wk = 0; wk < words_; ++wk) {
            uint64_t bits = a[wk];
            while (bits) {
                std::size_t k = wk * 64 + std::size_t(std::countr_zero(bits));
                bits &= bits - 1;
                const uint64_t* src = o.row(k);
                for (std::size_t j = 0; j < out.words_; ++j) dst[j] ^= src[j];
            }
        }
    }
    return out;
}

BitVec BitMatrix::mul_vec(const BitVec& v) const {
    if (v.size() != cols_) throw StructuralError("mul_vec: dimension mismatch");
    BitVec out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        const uint64_t* a = row(r);
        uint64_t parity = 0;
        for (std::size_t k = 0; k < words_; ++k)
            parity ^= uint64_t(__builtin_popcountll(a[k] & v.words()[k]));
        out.set(r, parity & 1);
    }
    return out;
}

std::string BitMatrix::to_string() const {
    std::string s;
    s.reserve(rows_ * (cols_ + 1));
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) s += get(r, c) ? '1' : '0';
        s += '\n';
    }
    return s;
}

} // namespace khovcss::f2
