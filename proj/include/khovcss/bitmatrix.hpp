#pragma once

#include <cstdint>
#include <cstddef>
#include <string>
#include <vector>

namespace khovcss::f2 {

inline std::size_t words_for(std::size_t bits) { return (bits + 63) / 64; }

/// Plain bit vector over F2, little-endian within words (column c lives in
/// word c/64, bit c%64).
class BitVec {
public:
    BitVec() = default;
    explicit BitVec(std::size_t n) : n_(n), w_(words_for(n), 0) {}

    std::size_t size() const { return n_; }
    bool get(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
    void set(std::size_t i, bool v) {
        uint64_t m = uint64_t(1) << (i & 63);
        if (v) w_[i >> 6] |= m; else w_[i >> 6] &= ~m;
    }
    void flip(std::size_t i) { w_[i >> 6] ^= uint64_t(1) << (i & 63); }

    uint64_t* words() { return w_.data(); }
    const uint64_t* words() const { return w_.data(); }
    std::size_t word_count() const { return w_.size(); }

    void clear() { std::fill(w_.begin(), w_.end(), 0); }
    void xor_words(const uint64_t* src) {
        for (std::size_t k = 0; k < w_.size(); ++k) w_[k] ^= src[k];
    }
    void xor_vec(const BitVec& o) { xor_words(o.w_.data()); }

    std::size_t popcount() const {
        std::size_t c = 0;
        for (uint64_t x : w_) c += std::size_t(__builtin_popcountll(x));
        return c;
    }
    bool is_zero() const {
        for (uint64_t x : w_) if (x) return false;
        return true;
    }
    bool operator==(const BitVec& o) const { return n_ == o.n_ && w_ == o.w_; }

    /// Lexicographic order reading columns 0,1,2,... with 0 < 1.
    bool lex_less(const BitVec& o) const;

    std::string to_string() const;

private:
    std::size_t n_ = 0;
    std::vector<uint64_t> w_;
};

/// Dense bit-packed matrix over F2. Rows are contiguous word runs.
class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), words_(words_for(cols)), w_(rows * words_, 0) {}

    static BitMatrix identity(std::size_t n);
    /// Rows given as strings of '0'/'1' (test convenience).
    static BitMatrix from_rows(const std::vector<std::string>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t words() const { return words_; }

    bool get(std::size_t r, std::size_t c) const {
        return (w_[r * words_ + (c >> 6)] >> (c & 63)) & 1;
    }
    void set(std::size_t r, std::size_t c, bool v) {
        uint64_t m = uint64_t(1) << (c & 63);
        uint64_t& word = w_[r * words_ + (c >> 6)];
        if (v) word |= m; else word &= ~m;
    }
    void flip(std::size_t r, std::size_t c) {
        w_[r * words_ + (c >> 6)] ^= uint64_t(1) << (c & 63);
    }

    uint64_t* row(std::size_t r) { return w_.data() + r * words_; }
    const uint64_t* row(std::size_t r) const { return w_.data() + r * words_; }

    void xor_rows(std::size_t dst, std::size_t src) {
        uint64_t* d = row(dst);
        const uint64_t* s = row(src);
        for (std::size_t k = 0; k < words_; ++k) d[k] ^= s[k];
    }
    void xor_row_from(std::size_t dst, const uint64_t* src) {
        uint64_t* d = row(dst);
        for (std::size_t k = 0; k < words_; ++k) d[k] ^= src[k];
    }
    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        uint64_t* pa = row(a);
        uint64_t* pb = row(b);
        for (std::size_t k = 0; k < words_; ++k) std::swap(pa[k], pb[k]);
    }

    std::size_t row_weight(std::size_t r) const {
        const uint64_t* p = row(r);
        std::size_t c = 0;
        for (std::size_t k = 0; k < words_; ++k) c += std::size_t(__builtin_popcountll(p[k]));
        return c;
    }
    std::size_t col_weight(std::size_t c) const {
        std::size_t n = 0;
        for (std::size_t r = 0; r < rows_; ++r) n += get(r, c);
        return n;
    }
    bool row_is_zero(std::size_t r) const {
        const uint64_t* p = row(r);
        for (std::size_t k = 0; k < words_; ++k) if (p[k]) return false;
        return true;
    }
    bool is_zero() const {
        for (uint64_t x : w_) if (x) return false;
        return true;
    }

    BitVec row_vec(std::size_t r) const {
        BitVec v(cols_);
        const uint64_t* p = row(r);
        for (std::size_t k = 0; k < words_; ++k) v.words()[k] = p[k];
        return v;
    }
    void set_row(std::size_t r, const BitVec& v) {
        uint64_t* p = row(r);
        for (std::size_t k = 0; k < words_; ++k) p[k] = v.words()[k];
    }

    BitMatrix transpose() const;
    /// Matrix product over F2; this->cols() must match o.rows().
    BitMatrix mul(const BitMatrix& o) const;
    /// this * v (v has cols() bits), result has rows() bits.
    BitVec mul_vec(const BitVec& v) const;

    bool operator==(const BitMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && w_ == o.w_;
    }

    std::string to_string() const;

private:
    std::size_t rows_ = 0, cols_ = 0, words_ = 0;
    std::vector<uint64_t> w_;
};

} // namespace khovcss::f2
