#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace khovcss::asym {

/// Exact element of Z[sqrt(3)]: a + b*sqrt(3).
struct QuadInt {
    mpz_class a, b;

    QuadInt() : a(0), b(0) {}
    QuadInt(mpz_class a_, mpz_class b_) : a(std::move(a_)), b(std::move(b_)) {}

    QuadInt operator*(const QuadInt& o) const { return {a * o.a + 3 * b * o.b, a * o.b + b * o.a}; }
    QuadInt operator+(const QuadInt& o) const { return {a + o.a, b + o.b}; }
    bool operator==(const QuadInt& o) const { return a == o.a && b == o.b; }
    QuadInt pow(uint32_t e) const;
};

/// sum_{r=0}^{l} (binom(l,r) x^r)^2, exact.
mpq_class sum_squares(uint32_t l, const mpq_class& x);

/// sum_squares(l, x) divided by (1+x)^{2l+1} / (2 sqrt(x pi l)).
double sum_squares_ratio(uint32_t l, const mpq_class& x);

/// T_l = 2^l sum binom(l,r) binom(2r,r) / 2^r, exact (always an integer).
mpz_class unlink_T(uint32_t l);

/// unlink_T(l) divided by sqrt(3/(2 pi l)) 6^l.
double unlink_T_ratio(uint32_t l);

struct LegendreCheck {
    bool quad_identity_ok = false; // (2+sqrt3)^l T_l == sum binom^2 (2+sqrt3)^{2r}, exact
    double recurrence_rel_err = 0; // scaled three-term recurrence vs exact T_l
    bool pass = false;             // both, recurrence to 1e-10
};
LegendreCheck legendre_check(uint32_t l);

struct BestParamRow {
    uint32_t l = 0;
    uint32_t r = 0;
    bool skipped = false;   // r outside [2, l]
    bool verdict = false;   // 162^2 min{binom, 2^{r-1}}^2 > 100^2 n, exact integers
    bool in_band = false;   // 100*2^{r-1} < 261*binom and 100*binom < 261*2^{r-1}
    double eps = 0;         // rounding residue of the slice-degree formula
};

struct BestParamReport {
    std::vector<BestParamRow> rows;
    uint32_t verdict_threshold = 0; // smallest l with verdict true for the whole suffix
    uint32_t band_threshold = 0;    // same for the delta band
    bool suffix_all_true = false;

    std::string to_json() const;
    std::string to_csv() const;
};

BestParamReport best_param_check(uint32_t l_min, uint32_t l_max);

} // namespace khovcss::asym
