#include "khovcss/homalg.hpp"

#include "khovcss/errors.hpp"

#include <json.hpp>

#include <algorithm>

namespace khovcss::homalg {

f2::BitMatrix ChainComplex::diff_at(int deg) const {
    int i = deg - min_degree;
    if (i >= 0 && i + 1 < int(dims.size())) return diffs[std::size_t(i)];
    std::size_t cols = dim_at(deg);
    std::size_t rows = dim_at(deg + 1);
    return f2::BitMatrix(rows, cols);
}

bool ChainComplex::d_squared_zero() const {
    for (std::size_t i = 0; i + 1 < diffs.size(); ++i) {
        if (!diffs[i + 1].mul(diffs[i]).is_zero()) return false;
    }
    return true;
}

void ChainComplex::check_integrity() const {
    if (!dims.empty() && diffs.size() + 1 != dims.size())
        throw IntegrityError("complex: differential count mismatch");
    for (std::size_t i = 0; i < diffs.size(); ++i) {
        if (diffs[i].cols() != dims[i] || diffs[i].rows() != dims[i + 1])
            throw IntegrityError("complex: differential shape mismatch at " + std::to_string(i));
    }
    if (!d_squared_zero()) throw IntegrityError("complex: d^2 != 0");
}

std::size_t HomologySummary::total_homology() const {
    std::size_t t = 0;
    for (std::size_t h : homology) t += h;
    return t;
}

std::string HomologySummary::to_json() const {
    nlohmann::ordered_json j;
    j["min_degree"] = min_degree;
    j["dims"] = dims;
    j["ranks"] = ranks;
    j["homology"] = homology;
    j["euler"] = euler_chain;
    return j.dump();
}

HomologySummary homology_dims(const ChainComplex& c) {
    c.check_integrity();
    HomologySummary s;
    s.min_degree = c.min_degree;
    s.dims = c.dims;
    s.ranks.assign(c.dims.size(), 0);
    for (std::size_t i = 0; i < c.diffs.size(); ++i) s.ranks[i] = f2::rank(c.diffs[i]);
    s.homology.assign(c.dims.size(), 0);
    for (std::size_t i = 0; i < c.dims.size(); ++i) {
        std::size_t rim = i > 0 ? s.ranks[i - 1] : 0;
        if (c.dims[i] < s.ranks[i] + rim) throw IntegrityError("homology: negative dimension");
        s.homology[i] = c.dims[i] - s.ranks[i] - rim;
    }
    for (std::size_t i = 0; i < c.dims.size(); ++i) {
        int deg = c.min_degree + int(i);
        long long sign = ((deg % 2) + 2) % 2 == 0 ? 1 : -1;
        s.euler_chain += sign * (long long)c.dims[i];
        s.euler_homology += sign * (long long)s.homology[i];
    }
    return s;
}

ChainComplex tensor(const ChainComplex& a, const ChainComplex& b) {
    ChainComplex t;
    t.min_degree = a.min_degree + b.min_degree;
    if (a.dims.empty() || b.dims.empty()) return t;
    const std::size_t la = a.dims.size(), lb = b.dims.size();
    t.dims.assign(la + lb - 1, 0);
    for (std::size_t i = 0; i < t.dims.size(); ++i) {
        for (std::size_t j = 0; j < la; ++j) {
            std::size_t k = i - j;
            if (i >= j && k < lb) t.dims[i] += a.dims[j] * b.dims[k];
        }
    }
    // offset of block (j, i-j) within degree i
    auto block_offset = [&](std::size_t i, std::size_t j) {
        std::size_t off = 0;
        for (std::size_t jj = 0; jj < j; ++jj) {
            std::size_t k = i - jj;
            if (i >= jj && k < lb) off += a.dims[jj] * b.dims[k];
        }
        return off;
    };
    for (std::size_t i = 0; i + 1 < t.dims.size(); ++i) {
        f2::BitMatrix m(t.dims[i + 1], t.dims[i]);
        for (std::size_t j = 0; j < la; ++j) {
            std::size_t k = i - j;
            if (i < j || k >= lb) continue;
            std::size_t src_off = block_offset(i, j);
            // d_a (x) id : block (j, k) -> (j+1, k)
            if (j + 1 < la) {
                std::size_t dst_off = block_offset(i + 1, j + 1);
                const f2::BitMatrix& da = a.diffs[j];
                for (std::size_t r = 0; r < da.rows(); ++r)
                    for (std::size_t cc = 0; cc < da.cols(); ++cc)
                        if (da.get(r, cc))
                            for (std::size_t y = 0; y < b.dims[k]; ++y)
                                m.set(dst_off + r * b.dims[k] + y, src_off + cc * b.dims[k] + y,
                                      true);
            }
            // id (x) d_b : block (j, k) -> (j, k+1)
            if (k + 1 < lb) {
                std::size_t dst_off = block_offset(i + 1, j);
                const f2::BitMatrix& db = b.diffs[k];
                for (std::size_t r = 0; r < db.rows(); ++r)
                    for (std::size_t cc = 0; cc < db.cols(); ++cc)
                        if (db.get(r, cc))
                            for (std::size_t x = 0; x < a.dims[j]; ++x)
                                m.set(dst_off + x * b.dims[k + 1] + r,
                                      src_off + x * b.dims[k] + cc, true);
            }
        }
        t.diffs.push_back(std::move(m));
    }
    return t;
}

namespace {

f2::BitMatrix chain_map_at(const ChainMap& f, const ChainComplex& c1, const ChainComplex& c2,
                           int deg) {
    std::size_t rows = c2.dim_at(deg), cols = c1.dim_at(deg);
    int i = deg - c1.min_degree;
    if (i >= 0 && std::size_t(i) < f.maps.size()) {
        const f2::BitMatrix& m = f.maps[std::size_t(i)];
        if (m.rows() == 0 && m.cols() == 0) return f2::BitMatrix(rows, cols);
        if (m.rows() != rows || m.cols() != cols)
            throw PreconditionError("chain map: shape mismatch at degree " + std::to_string(deg));
        return m;
    }
    return f2::BitMatrix(rows, cols);
}

} // namespace

ChainComplex cone(const ChainComplex& c1, const ChainComplex& c2, const ChainMap& f) {
    if (c1.min_degree != c2.min_degree)
        throw PreconditionError("cone: complexes must share min_degree");
    const int mind = c1.min_degree;
    const int hi = std::max(c1.max_degree(), c2.max_degree()) + 1;
    for (int deg = mind; deg < hi; ++deg) {
        f2::BitMatrix lhs = c2.diff_at(deg).mul(chain_map_at(f, c1, c2, deg));
        f2::BitMatrix rhs = chain_map_at(f, c1, c2, deg + 1).mul(c1.diff_at(deg));
        if (!(lhs == rhs)) throw PreconditionError("cone: f is not a chain map");
    }
    ChainComplex out;
    out.min_degree = mind;
    for (int deg = mind; deg <= hi + 1; ++deg)
        out.dims.push_back(c1.dim_at(deg) + c2.dim_at(deg - 1));
    while (!out.dims.empty() && out.dims.back() == 0) out.dims.pop_back();
    for (std::size_t i = 0; i + 1 < out.dims.size(); ++i) {
        int deg = mind + int(i);
        std::size_t n1 = c1.dim_at(deg), n2 = c2.dim_at(deg - 1);
        std::size_t m1 = c1.dim_at(deg + 1), m2 = c2.dim_at(deg);
        f2::BitMatrix m(m1 + m2, n1 + n2);
        f2::BitMatrix d1 = c1.diff_at(deg);
        for (std::size_t r = 0; r < m1; ++r)
            for (std::size_t c = 0; c < n1; ++c)
                if (d1.get(r, c)) m.set(r, c, true);
        f2::BitMatrix fi = chain_map_at(f, c1, c2, deg);
        for (std::size_t r = 0; r < m2; ++r)
            for (std::size_t c = 0; c < n1; ++c)
                if (fi.get(r, c)) m.set(m1 + r, c, true);
        f2::BitMatrix d2 = c2.diff_at(deg - 1);
        for (std::size_t r = 0; r < m2; ++r)
            for (std::size_t c = 0; c < n2; ++c)
                if (d2.get(r, c)) m.set(m1 + r, n1 + c, true);
        out.diffs.push_back(std::move(m));
    }
    return out;
}

ChainComplex dual(const ChainComplex& c) {
    ChainComplex d;
    d.min_degree = c.min_degree;
    d.dims.assign(c.dims.rbegin(), c.dims.rend());
    for (std::size_t i = c.diffs.size(); i-- > 0;) d.diffs.push_back(c.diffs[i].transpose());
    return d;
}

std::size_t induced_homology_rank(const ChainComplex& c1, const ChainComplex& c2,
                                  const ChainMap& f, int n) {
    if (c1.dim_at(n) == 0 || c2.dim_at(n) == 0) return 0;
    // rank of [f(cycles)] in H^n(c2) = rank(boundaries2 + f(cycles)) - rank(boundaries2)
    f2::BitMatrix cycles = f2::kernel_basis(c1.diff_at(n));
    f2::BitMatrix fi = chain_map_at(f, c1, c2, n);
    f2::BitMatrix b2 = c2.diff_at(n - 1).transpose(); // rows span boundaries of c2 at n
    std::size_t stack_rows = b2.rows() + cycles.rows();
    f2::BitMatrix stack(stack_rows, c2.dim_at(n));
    for (std::size_t r = 0; r < b2.rows(); ++r) stack.set_row(r, b2.row_vec(r));
    for (std::size_t r = 0; r < cycles.rows(); ++r)
        stack.set_row(b2.rows() + r, fi.mul_vec(cycles.row_vec(r)));
    return f2::rank(stack) - f2::rank(b2);
}

bool cone_rank_consistent(const ChainComplex& c1, const ChainComplex& c2, const ChainMap& f) {
    ChainComplex cn = cone(c1, c2, f);
    HomologySummary hc = homology_dims(cn);
    HomologySummary h1 = homology_dims(c1);
    HomologySummary h2 = homology_dims(c2);
    int lo = cn.min_degree - 1, hi = cn.max_degree() + 1;
    for (int n = lo; n <= hi; ++n) {
        std::size_t rk_n = induced_homology_rank(c1, c2, f, n);
        std::size_t rk_prev = induced_homology_rank(c1, c2, f, n - 1);
        std::size_t ker = h1.homology_at(n) - rk_n;
        std::size_t coker = h2.homology_at(n - 1) - rk_prev;
        if (hc.homology_at(n) != ker + coker) return false;
    }
    return true;
}

f2::MinWeightResult min_homology_weight(const ChainComplex& c, int degree,
                                        const f2::MinWeightOptions& opts) {
    std::size_t n = c.dim_at(degree);
    if (n == 0) throw PreconditionError("min_homology_weight: empty degree");
    f2::BitMatrix a = c.diff_at(degree);
    f2::BitMatrix b = c.diff_at(degree - 1).transpose();
    return f2::min_nontrivial_weight(a, b, opts);
}

} // namespace khovcss::homalg
