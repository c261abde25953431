#include "khovcss/f2.hpp"

#include "khovcss/errors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace khovcss::f2 {

namespace {

constexpr uint64_t kInf = std::numeric_limits<uint64_t>::max();

struct Best {
    uint64_t w = kInf;
    BitVec vec;

    void offer(uint64_t cand_w, const BitVec& v) {
        if (cand_w < w || (cand_w == w && v.lex_less(vec))) {
            w = cand_w;
            vec = v;
        }
    }
    void merge(const Best& o) {
        if (o.w == kInf) return;
        offer(o.w, o.vec);
    }
};

double binomial_approx(uint32_t n, uint32_t k) {
    if (k > n) return 0.0;
    double r = 1.0;
    for (uint32_t i = 0; i < k; ++i) r = r * double(n - i) / double(i + 1);
    return r;
}

// Shared setup: cycle space, boundary basis, quotient data.
struct Problem {
    std::size_t n = 0;
    BitMatrix cycles;            // k1 x n, RREF rows
    Rref boundary;               // RREF of B
    std::vector<BitVec> qreps;   // cycle rows independent mod boundary
    std::vector<BitVec> funcs;   // functionals: zero on boundary, full rank on quotient
    std::size_t k1 = 0, b0 = 0, h = 0;

    bool sig_mode() const { return h <= 64; }

    uint64_t signature(const BitVec& v) const {
        uint64_t s = 0;
        for (std::size_t j = 0; j < funcs.size(); ++j) {
            uint64_t parity = 0;
            for (std::size_t k = 0; k < v.word_count(); ++k)
                parity ^= uint64_t(__builtin_popcountll(v.words()[k] & funcs[j].words()[k]));
            s |= (parity & 1) << j;
        }
        return s;
    }
    bool is_boundary(const BitVec& v) const {
        BitVec w = v;
        return boundary.reduces_to_zero(w);
    }
};

Problem setup(const BitMatrix& a, const BitMatrix& b) {
    Problem p;
    p.n = a.cols();
    if (b.rows() > 0 && b.cols() != a.cols())
        throw PreconditionError("min_nontrivial_weight: column mismatch");
    p.cycles = kernel_basis(a);
    p.k1 = p.cycles.rows();
    BitMatrix bm = b.rows() > 0 ? b : BitMatrix(0, p.n);
    p.boundary = rref(bm);
    p.b0 = p.boundary.rank;
    BitMatrix bbasis(p.b0, p.n);
    for (std::size_t i = 0; i < p.b0; ++i) bbasis.set_row(i, p.boundary.mat.row_vec(i));
    p.qreps = complement_rows(bbasis, p.cycles);
    p.h = p.qreps.size();
    if (p.h > 0 && p.h <= 64) {
        BitMatrix nb = kernel_basis(bbasis);          // functionals zero on boundary
        BitMatrix nz = kernel_basis(p.cycles);        // functionals zero on all cycles
        std::vector<BitVec> u = complement_rows(nz, nb);
        if (u.size() != p.h) throw IntegrityError("quotient functional count mismatch");
        p.funcs = std::move(u);
    }
    return p;
}

// Full enumeration of ker(A) organized as (nonzero quotient combo) x (boundary
// subgroup), Gray order in both loops.
void enumerate_kernel(const Problem& p, MinWeightResult& res) {
    const std::size_t h = p.h, b0 = p.b0;
    const uint64_t outer = (uint64_t(1) << h) - 1; // nonzero combos
    const uint64_t inner = uint64_t(1) << b0;

    std::vector<BitVec> brows(b0);
    for (std::size_t i = 0; i < b0; ++i) brows[i] = p.boundary.mat.row_vec(i);

    int nthreads = 1;
#ifdef _OPENMP
    nthreads = omp_get_max_threads();
#endif
    const std::size_t nt = std::size_t(nthreads);
    std::vector<Best> bests(nt);
    std::vector<uint64_t> counts(nt, 0);

#ifdef _OPENMP
#pragma omp parallel num_threads(nthreads)
#endif
    {
        int tid = 0;
#ifdef _OPENMP
        tid = omp_get_thread_num();
#endif
        uint64_t lo = outer * uint64_t(tid) / uint64_t(nthreads);
        uint64_t hi = outer * uint64_t(tid + 1) / uint64_t(nthreads);
        Best& best = bests[std::size_t(tid)];
        BitVec base(p.n), v(p.n);
        uint64_t gray_prev = 0;
        for (uint64_t idx = lo; idx < hi; ++idx) {
            // quotient combos walk 1..outer in Gray order
            uint64_t g = (idx + 1) ^ ((idx + 1) >> 1);
            if (idx == lo) {
                base.clear();
                uint64_t gg = g;
                while (gg) {
                    int k = std::countr_zero(gg);
                    gg &= gg - 1;
                    base.xor_vec(p.qreps[std::size_t(k)]);
                }
            } else {
                uint64_t diff = g ^ gray_prev;
                while (diff) {
                    int k = std::countr_zero(diff);
                    diff &= diff - 1;
                    base.xor_vec(p.qreps[std::size_t(k)]);
                }
            }
            gray_prev = g;
            v = base;
            best.offer(v.popcount(), v);
            uint64_t g2_prev = 0;
            for (uint64_t j = 1; j < inner; ++j) {
                uint64_t g2 = j ^ (j >> 1);
                int k = std::countr_zero(g2 ^ g2_prev);
                g2_prev = g2;
                v.xor_vec(brows[std::size_t(k)]);
                best.offer(v.popcount(), v);
            }
            counts[std::size_t(tid)] += inner;
        }
    }
    Best total;
    for (auto& b : bests) total.merge(b);
    for (uint64_t c : counts) res.enumerated += c;
    res.found = total.w != kInf;
    res.upper = total.w;
    res.witness = total.vec;
    res.exact = true;
    res.certified_lb = total.w;
    res.method = "kernel-enumeration";
}

struct InfoSet {
    BitMatrix gen;      // k1 x n, systematic on its pivot columns
    uint32_t defect;    // pivots already covered by earlier sets
};

std::vector<InfoSet> build_info_sets(const Problem& p) {
    std::vector<InfoSet> sets;
    std::vector<bool> used(p.n, false);
    while (true) {
        std::vector<uint32_t> order;
        order.reserve(p.n);
        for (std::size_t c = 0; c < p.n; ++c) if (!used[c]) order.push_back(uint32_t(c));
        for (std::size_t c = 0; c < p.n; ++c) if (used[c]) order.push_back(uint32_t(c));
        Rref rr = rref_with_column_order(p.cycles, order);
        if (rr.rank != p.k1) throw IntegrityError("cycle basis lost rank");
        uint32_t fresh = 0;
        for (uint32_t c : rr.pivot_cols) {
            if (!used[c]) { used[c] = true; ++fresh; }
        }
        if (fresh == 0) break;
        InfoSet s;
        s.gen = BitMatrix(p.k1, p.n);
        for (std::size_t i = 0; i < p.k1; ++i) s.gen.set_row(i, rr.mat.row_vec(i));
        s.defect = uint32_t(p.k1 - fresh);
        sets.push_back(std::move(s));
        if (sets.size() >= 8) break;
    }
    return sets;
}

// Depth-first enumeration of all XORs of exactly w rows of g with first row
// index in [i0, i1).
struct ComboWalker {
    const BitMatrix& g;
    const std::vector<uint64_t>& sigs;
    const Problem& p;
    bool use_sig;
    uint32_t w;
    Best& best;
    uint64_t& count;
    BitVec acc;
    uint64_t sig = 0;

    ComboWalker(const BitMatrix& g_, const std::vector<uint64_t>& sigs_, const Problem& p_,
                bool use_sig_, uint32_t w_, Best& best_, uint64_t& count_)
        : g(g_), sigs(sigs_), p(p_), use_sig(use_sig_), w(w_), best(best_), count(count_),
          acc(g_.cols()) {}

    void run(std::size_t depth, std::size_t from) {
        if (depth == w) {
            ++count;
            uint64_t wt = acc.popcount();
            if (wt <= best.w) {
                bool nontrivial = use_sig ? (sig != 0) : !p.is_boundary(acc);
                if (nontrivial) best.offer(wt, acc);
            }
            return;
        }
        const std::size_t last = g.rows() - (w - depth) + 1;
        for (std::size_t i = from; i < last; ++i) {
            acc.xor_words(g.row(i));
            if (use_sig) sig ^= sigs[i];
            run(depth + 1, i + 1);
            acc.xor_words(g.row(i));
            if (use_sig) sig ^= sigs[i];
        }
    }

    void run_top(std::size_t i0, std::size_t i1) {
        for (std::size_t i = i0; i < i1; ++i) {
            acc.xor_words(g.row(i));
            if (use_sig) sig ^= sigs[i];
            run(1, i + 1);
            acc.xor_words(g.row(i));
            if (use_sig) sig ^= sigs[i];
        }
    }
};

void combos_dfs(const BitMatrix& g, const std::vector<uint64_t>& sigs, uint32_t w,
                std::size_t i0, std::size_t i1, const Problem& p, bool use_sig,
                Best& best, uint64_t& count) {
    if (w == 0) return;
    ComboWalker walker(g, sigs, p, use_sig, w, best, count);
    walker.run_top(i0, std::min(i1, g.rows() - w + 1));
}

void infoset_search(const Problem& p, const MinWeightOptions& opts, MinWeightResult& res) {
    std::vector<InfoSet> sets = build_info_sets(p);
    const bool use_sig = p.sig_mode();
    std::vector<std::vector<uint64_t>> sigs(sets.size());
    if (use_sig) {
        for (std::size_t j = 0; j < sets.size(); ++j) {
            sigs[j].resize(p.k1);
            for (std::size_t i = 0; i < p.k1; ++i)
                sigs[j][i] = p.signature(sets[j].gen.row_vec(i));
        }
    }

    Best best;
    uint64_t lb = 1;
    uint32_t w = 0;
    res.method = "information-set";
    const uint32_t w_cap = opts.bounded ? opts.wmax : uint32_t(p.k1);
    while (w < w_cap) {
        ++w;
        double projected = 0;
        for (std::size_t j = 0; j < sets.size(); ++j)
            projected += binomial_approx(uint32_t(p.k1), w);
        if (projected > double(opts.max_work)) {
            --w;
            break;
        }
        for (std::size_t j = 0; j < sets.size(); ++j) {
            int nthreads = 1;
#ifdef _OPENMP
            nthreads = omp_get_max_threads();
#endif
            const std::size_t nt = std::size_t(nthreads);
            std::vector<Best> bests(nt);
            std::vector<uint64_t> counts(nt, 0);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1)
#endif
            for (std::ptrdiff_t t = 0; t < nthreads; ++t) {
                std::size_t span = p.k1 - w + 1;
                std::size_t lo = span * std::size_t(t) / std::size_t(nthreads);
                std::size_t hi = span * std::size_t(t + 1) / std::size_t(nthreads);
                bests[std::size_t(t)] = best; // start from global best to prune offers
                combos_dfs(sets[j].gen, use_sig ? sigs[j] : std::vector<uint64_t>{}, w,
                           lo, hi, p, use_sig, bests[std::size_t(t)], counts[std::size_t(t)]);
            }
            for (auto& b : bests) best.merge(b);
            for (uint64_t c : counts) res.enumerated += c;
        }
        lb = 0;
        for (const auto& s : sets) lb += (w + 1 > s.defect) ? (w + 1 - s.defect) : 0;
        if (best.w != kInf && lb >= best.w) break;
    }
    lb = 0;
    for (const auto& s : sets) lb += (w + 1 > s.defect) ? (w + 1 - s.defect) : 0;
    res.found = best.w != kInf;
    res.upper = best.w;
    res.witness = best.vec;
    res.certified_lb = res.found ? std::min<uint64_t>(lb, best.w) : lb;
    res.exact = res.found && lb >= best.w;
}

} // namespace

MinWeightResult min_nontrivial_weight(const BitMatrix& a, const BitMatrix& b,
                                      const MinWeightOptions& opts) {
    Problem p = setup(a, b);
    MinWeightResult res;
    if (p.h == 0) {
        res.infinite = true;
        res.exact = true;
        res.certified_lb = kInf;
        res.method = "trivial-homology";
        return res;
    }
    if (p.k1 <= opts.enum_budget) {
        enumerate_kernel(p, res);
        return res;
    }
    infoset_search(p, opts, res);
    return res;
}

namespace serial {

MinWeightResult min_nontrivial_weight(const BitMatrix& a, const BitMatrix& b,
                                      uint32_t max_kernel_dim) {
    Problem p = setup(a, b);
    MinWeightResult res;
    if (p.h == 0) {
        res.infinite = true;
        res.exact = true;
        res.certified_lb = kInf;
        res.method = "trivial-homology";
        return res;
    }
    if (p.k1 > max_kernel_dim)
        throw CapacityError("serial min weight: kernel too large");
    Best best;
    const uint64_t total = uint64_t(1) << p.k1;
    BitVec v(p.n);
    for (uint64_t mask = 1; mask < total; ++mask) {
        v.clear();
        for (std::size_t k = 0; k < p.k1; ++k)
            if ((mask >> k) & 1) v.xor_words(p.cycles.row(k));
        if (!p.is_boundary(v)) best.offer(v.popcount(), v);
        ++res.enumerated;
    }
    res.found = best.w != kInf;
    res.upper = best.w;
    res.witness = best.vec;
    res.exact = true;
    res.certified_lb = best.w;
    res.method = "serial-enumeration";
    return res;
}

} // namespace serial

} // namespace khovcss::f2
