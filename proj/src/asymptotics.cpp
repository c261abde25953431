#include "khovcss/asymptotics.hpp"

#include "khovcss/errors.hpp"
#include "khovcss/families.hpp"

#include <json.hpp>

#include <cmath>
#include <sstream>

namespace khovcss::asym {

QuadInt QuadInt::pow(uint32_t e) const {
    QuadInt r(1, 0), base = *this;
    while (e) {
        if (e & 1) r = r * base;
        base = base * base;
        e >>= 1;
    }
    return r;
}

namespace {

mpz_class binom(uint32_t n, uint32_t k) {
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

double log_mpz(const mpz_class& z) {
    signed long exp;
    double m = mpz_get_d_2exp(&exp, z.get_mpz_t());
    return std::log(m) + double(exp) * std::log(2.0);
}

double log_mpq(const mpq_class& q) {
    return log_mpz(mpz_class(q.get_num())) - log_mpz(mpz_class(q.get_den()));
}

} // namespace

mpq_class sum_squares(uint32_t l, const mpq_class& x) {
    if (sgn(x) <= 0) throw PreconditionError("sum_squares: x must be positive");
    mpq_class s = 0;
    for (uint32_t r = 0; r <= l; ++r) {
        mpq_class t = binom(l, r);
        mpq_class xr;
        mpz_pow_ui(mpq_numref(xr.get_mpq_t()), x.get_num().get_mpz_t(), r);
        mpz_pow_ui(mpq_denref(xr.get_mpq_t()), x.get_den().get_mpz_t(), r);
        xr.canonicalize();
        t *= xr;
        s += t * t;
    }
    return s;
}

double sum_squares_ratio(uint32_t l, const mpq_class& x) {
    mpq_class s = sum_squares(l, x);
    double lx = log_mpq(x);
    double log_asym = double(2 * l + 1) * log_mpq(x + 1) -
                      std::log(2.0) - 0.5 * (lx + std::log(M_PI * double(l)));
    return std::exp(log_mpq(s) - log_asym);
}

mpz_class unlink_T(uint32_t l) {
    mpz_class s = 0;
    for (uint32_t r = 0; r <= l; ++r) {
        mpz_class t = binom(l, r) * binom(2 * r, r);
        mpz_mul_2exp(t.get_mpz_t(), t.get_mpz_t(), l - r);
        s += t;
    }
    return s;
}

double unlink_T_ratio(uint32_t l) {
    mpz_class t = unlink_T(l);
    double log_asym = 0.5 * (std::log(3.0) - std::log(2.0 * M_PI * double(l))) +
                      double(l) * std::log(6.0);
    return std::exp(log_mpz(t) - log_asym);
}

LegendreCheck legendre_check(uint32_t l) {
    LegendreCheck c;
    // exact side: (2+sqrt3)^l T_l = sum_r binom(l,r)^2 (2+sqrt3)^{2r}
    QuadInt x0(2, 1);
    QuadInt lhs = x0.pow(l) * QuadInt(unlink_T(l), 0);
    QuadInt rhs;
    for (uint32_t r = 0; r <= l; ++r) {
        mpz_class b = binom(l, r);
        QuadInt term = x0.pow(2 * r);
        rhs = rhs + QuadInt(b * term.a, b * term.b);
    }
    c.quad_identity_ok = lhs == rhs;

    // numeric side: Q_n = (2 sqrt3)^n P_n(2/sqrt3) satisfies
    // (n+1) Q_{n+1} = 4(2n+1) Q_n - 12 n Q_{n-1}, and Q_l should equal T_l.
    long double q0 = 1.0L, q1 = 4.0L;
    long double q = l == 0 ? q0 : q1;
    for (uint32_t n = 1; n < l; ++n) {
        long double q2 = (4.0L * (2 * n + 1) * q1 - 12.0L * n * q0) / (n + 1);
        q0 = q1;
        q1 = q2;
        q = q2;
    }
    mpz_class texact = unlink_T(l);
    double lt = log_mpz(texact);
    double lq = double(std::log(q));
    c.recurrence_rel_err = std::abs(std::expm1(lq - lt));
    c.pass = c.quad_identity_ok && c.recurrence_rel_err <= 1e-10;
    return c;
}

BestParamReport best_param_check(uint32_t l_min, uint32_t l_max) {
    BestParamReport rep;
    for (uint32_t l = std::max(2u, l_min); l <= l_max; ++l) {
        BestParamRow row;
        row.l = l;
        row.r = families::r_of_l(l);
        row.eps = families::subfamily_eps(l);
        if (row.r < 2 || row.r > l) {
            row.skipped = true;
            rep.rows.push_back(row);
            continue;
        }
        mpz_class c = binom(l, row.r);
        mpz_class p;
        mpz_ui_pow_ui(p.get_mpz_t(), 2, row.r - 1);
        mpz_class m = std::min(c, p);
        mpz_class n = c * p;
        row.verdict = 162 * 162 * m * m > 100 * 100 * n;
        row.in_band = (100 * p < 261 * c) && (100 * c < 261 * p);
        rep.rows.push_back(row);
    }
    auto threshold = [&](auto pred) -> uint32_t {
        uint32_t thr = rep.rows.empty() ? 0 : rep.rows.front().l;
        for (const auto& r : rep.rows)
            if (r.skipped || !pred(r)) thr = r.l + 1;
        return thr;
    };
    rep.verdict_threshold = threshold([](const BestParamRow& r) { return r.verdict; });
    rep.band_threshold = threshold([](const BestParamRow& r) { return r.in_band; });
    rep.suffix_all_true = !rep.rows.empty() && rep.verdict_threshold <= rep.rows.back().l;
    return rep;
}

std::string BestParamReport::to_json() const {
    nlohmann::ordered_json j;
    j["verdict_threshold"] = verdict_threshold;
    j["band_threshold"] = band_threshold;
    j["suffix_all_true"] = suffix_all_true;
    auto rows_j = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
        nlohmann::ordered_json rj;
        rj["l"] = r.l;
        rj["r"] = r.r;
        rj["skipped"] = r.skipped;
        rj["verdict"] = r.verdict;
        rj["in_band"] = r.in_band;
        rj["eps"] = r.eps;
        rows_j.push_back(rj);
    }
    j["rows"] = rows_j;
    return j.dump();
}

std::string BestParamReport::to_csv() const {
    std::ostringstream out;
    out << "l,r,skipped,verdict,in_band,eps\n";
    for (const auto& r : rows)
        out << r.l << ',' << r.r << ',' << r.skipped << ',' << r.verdict << ',' << r.in_band
            << ',' << r.eps << '\n';
    return out.str();
}

} // namespace khovcss::asym
