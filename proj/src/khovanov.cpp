#include "khovcss/khovanov.hpp"

#include "khovcss/errors.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace khovcss::kh {

uint32_t bit_reverse(uint32_t x, uint32_t width) {
    uint32_t r = 0;
    for (uint32_t i = 0; i < width; ++i) {
        r = (r << 1) | (x & 1);
        x >>= 1;
    }
    return r;
}

namespace {

// masks with `ones` set bits, ascending (Gosper)
uint32_t next_same_popcount(uint32_t v) {
    uint32_t t = v | (v - 1);
    return (t + 1) | (((~t & (t + 1)) - 1) >> (uint32_t(__builtin_ctz(v)) + 1));
}

ResolutionEntry make_entry(const PlanarDiagram& d, uint32_t bits, bool reduced) {
    ResolutionEntry e;
    e.bits = bits;
    e.res = trace_circles(d, bits);
    uint32_t total = e.res.n_circles();
    e.label_pos.assign(total, -1);
    for (uint32_t c = 0; c < total; ++c) {
        if (reduced && int32_t(c) == e.res.dotted) continue;
        e.label_pos[c] = int32_t(e.labeled_circle.size());
        e.labeled_circle.push_back(c);
    }
    return e;
}

// Which circle of `to` contains circle `c` of `from` (same diagram, bits
// differing at one crossing). Free circles correspond by ordinal.
int32_t image_circle(const ResolutionEntry& from, const Resolution& to, uint32_t c) {
    if (c >= from.res.n_edge_circles) {
        return int32_t(to.n_edge_circles + (c - from.res.n_edge_circles));
    }
    return to.circle_of_edge[from.res.min_edge[c]];
}

// Local structure of one crossing flip (source has the 0-smoothing).
struct Flip {
    bool split = false;
    // circle indices; -1 only where noted
    int32_t src_circle = -1; // split: the splitting circle
    int32_t tgt_a = -1, tgt_b = -1; // split: the two pieces (a < b)
    int32_t src_a = -1, src_b = -1; // merge: the merging circles (a < b)
    int32_t tgt_circle = -1;        // merge: the fused circle
};

Flip analyze_flip(const ResolutionEntry& src, const ResolutionEntry& tgt) {
    Flip f;
    if (tgt.res.n_edge_circles == src.res.n_edge_circles + 1) {
        f.split = true;
        // the two target circles inside one source circle
        std::vector<int32_t> seen(src.res.n_edge_circles, -1);
        for (uint32_t t = 0; t < tgt.res.n_edge_circles; ++t) {
            int32_t s = src.res.circle_of_edge[tgt.res.min_edge[t]];
            if (seen[std::size_t(s)] >= 0) {
                f.src_circle = s;
                f.tgt_a = seen[std::size_t(s)];
                f.tgt_b = int32_t(t);
                break;
            }
            seen[std::size_t(s)] = int32_t(t);
        }
        if (f.src_circle < 0) throw IntegrityError("flip: split pair not found");
    } else if (tgt.res.n_edge_circles + 1 == src.res.n_edge_circles) {
        std::vector<int32_t> seen(tgt.res.n_edge_circles, -1);
        for (uint32_t s = 0; s < src.res.n_edge_circles; ++s) {
            int32_t t = tgt.res.circle_of_edge[src.res.min_edge[s]];
            if (seen[std::size_t(t)] >= 0) {
                f.tgt_circle = t;
                f.src_a = seen[std::size_t(t)];
                f.src_b = int32_t(s);
                break;
            }
            seen[std::size_t(t)] = int32_t(s);
        }
        if (f.tgt_circle < 0) throw IntegrityError("flip: merge pair not found");
    } else {
        throw IntegrityError("flip: circle count must change by one");
    }
    return f;
}

// Copies labels of circles untouched by the flip from src word to tgt word.
uint32_t carry_labels(const ResolutionEntry& src, const ResolutionEntry& tgt, const Flip& f,
                      uint32_t src_labels) {
    uint32_t out = 0;
    for (uint32_t p = 0; p < src.n_labeled(); ++p) {
        uint32_t c = src.labeled_circle[p];
        if (f.split ? int32_t(c) == f.src_circle
                    : (int32_t(c) == f.src_a || int32_t(c) == f.src_b))
            continue;
        int32_t tc = image_circle(src, tgt.res, c);
        int32_t tp = tgt.label_pos[std::size_t(tc)];
        if (tp >= 0 && ((src_labels >> p) & 1)) out |= uint32_t(1) << tp;
    }
    return out;
}

// ... and the reverse direction.
uint32_t carry_labels_back(const ResolutionEntry& src, const ResolutionEntry& tgt, const Flip& f,
                           uint32_t tgt_labels) {
    uint32_t out = 0;
    for (uint32_t p = 0; p < src.n_labeled(); ++p) {
        uint32_t c = src.labeled_circle[p];
        if (f.split ? int32_t(c) == f.src_circle
                    : (int32_t(c) == f.src_a || int32_t(c) == f.src_b))
            continue;
        int32_t tc = image_circle(src, tgt.res, c);
        int32_t tp = tgt.label_pos[std::size_t(tc)];
        if (tp >= 0 && ((tgt_labels >> tp) & 1)) out |= uint32_t(1) << p;
    }
    return out;
}

// Forward rule: target label words produced from one source state through one
// crossing flip. Appends to `out`.
void forward_labels(const ResolutionEntry& src, const ResolutionEntry& tgt, const Flip& f,
                    LabelBasis basis, uint32_t src_labels, std::vector<uint32_t>& out) {
    uint32_t base = carry_labels(src, tgt, f, src_labels);
    if (f.split) {
        int32_t pa = tgt.label_pos[std::size_t(f.tgt_a)];
        int32_t pb = tgt.label_pos[std::size_t(f.tgt_b)];
        int32_t sp = src.label_pos[std::size_t(f.src_circle)];
        if (sp >= 0) {
            uint32_t eps = (src_labels >> sp) & 1;
            if (pa < 0 || pb < 0) throw IntegrityError("split: unlabeled piece of plain circle");
            if (basis == LabelBasis::pm) {
                // eta (+) eta' = eps (+) 1
                for (uint32_t eta = 0; eta <= 1; ++eta) {
                    uint32_t w = base;
                    if (eta) w |= uint32_t(1) << pa;
                    if ((eta ^ eps ^ 1) != 0) w |= uint32_t(1) << pb;
                    out.push_back(w);
                }
            } else {
                if (eps == 0) { // 1 -> 1 (x) X + X (x) 1
                    out.push_back(base | (uint32_t(1) << pb));
                    out.push_back(base | (uint32_t(1) << pa));
                } else {        // X -> X (x) X
                    out.push_back(base | (uint32_t(1) << pa) | (uint32_t(1) << pb));
                }
            }
        } else {
            // dotted circle splits; the new plain piece takes both labels
            // (pm) or only X (one_x).
            int32_t pn = pa >= 0 ? pa : pb;
            if (pn < 0) throw IntegrityError("split: dotted circle produced two dotted pieces");
            if (basis == LabelBasis::pm) {
                out.push_back(base);
                out.push_back(base | (uint32_t(1) << pn));
            } else {
                out.push_back(base | (uint32_t(1) << pn));
            }
        }
    } else {
        int32_t pa = src.label_pos[std::size_t(f.src_a)];
        int32_t pb = src.label_pos[std::size_t(f.src_b)];
        int32_t pt = tgt.label_pos[std::size_t(f.tgt_circle)];
        if (pa >= 0 && pb >= 0) {
            uint32_t la = (src_labels >> pa) & 1, lb = (src_labels >> pb) & 1;
            if (basis == LabelBasis::pm) {
                if (pt < 0) throw IntegrityError("merge: plain circles fused into dotted");
                uint32_t w = base;
                if (la ^ lb) w |= uint32_t(1) << pt;
                out.push_back(w);
            } else {
                if (la && lb) return; // X.X = 0
                uint32_t w = base;
                if (la ^ lb) w |= uint32_t(1) << pt;
                out.push_back(w);
            }
        } else {
            // merge with the dotted circle: label forced
            int32_t pp = pa >= 0 ? pa : pb;
            uint32_t lp = pp >= 0 ? (src_labels >> pp) & 1 : 0;
            if (pt >= 0) throw IntegrityError("merge: dotted fused into plain");
            if (basis == LabelBasis::pm) {
                out.push_back(base);
            } else {
                if (lp == 0) out.push_back(base); // X.1 = X, X.X = 0
            }
        }
    }
}

// Reverse rule: source label words mapping onto one target state through one
// crossing flip. Appends to `out`.
void reverse_labels(const ResolutionEntry& src, const ResolutionEntry& tgt, const Flip& f,
                    LabelBasis basis, uint32_t tgt_labels, std::vector<uint32_t>& out) {
    uint32_t base = carry_labels_back(src, tgt, f, tgt_labels);
    if (f.split) {
        int32_t pa = tgt.label_pos[std::size_t(f.tgt_a)];
        int32_t pb = tgt.label_pos[std::size_t(f.tgt_b)];
        int32_t sp = src.label_pos[std::size_t(f.src_circle)];
        if (sp >= 0) {
            uint32_t ea = (tgt_labels >> pa) & 1, eb = (tgt_labels >> pb) & 1;
            if (basis == LabelBasis::pm) {
                uint32_t eps = ea ^ eb ^ 1;
                out.push_back(base | (eps << sp));
            } else {
                if (ea ^ eb) out.push_back(base);                       // (1,X) <- 1
                else if (ea && eb) out.push_back(base | (uint32_t(1) << sp)); // (X,X) <- X
                // (1,1) has no preimage
            }
        } else {
            int32_t pn = pa >= 0 ? pa : pb;
            uint32_t en = (tgt_labels >> pn) & 1;
            if (basis == LabelBasis::pm) {
                out.push_back(base); // dotted source, any piece label fine
            } else {
                if (en) out.push_back(base); // only (dotted, X) arises
            }
        }
    } else {
        int32_t pa = src.label_pos[std::size_t(f.src_a)];
        int32_t pb = src.label_pos[std::size_t(f.src_b)];
        int32_t pt = tgt.label_pos[std::size_t(f.tgt_circle)];
        if (pa >= 0 && pb >= 0) {
            uint32_t mu = (tgt_labels >> pt) & 1;
            if (basis == LabelBasis::pm) {
                for (uint32_t ea = 0; ea <= 1; ++ea) {
                    uint32_t w = base | (ea << pa) | (((mu ^ ea) & 1) << pb);
                    out.push_back(w);
                }
            } else {
                if (mu == 0) {
                    out.push_back(base); // (1,1) -> 1
                } else {
                    out.push_back(base | (uint32_t(1) << pb)); // (1,X) -> X
                    out.push_back(base | (uint32_t(1) << pa)); // (X,1) -> X
                }
            }
        } else {
            int32_t pp = pa >= 0 ? pa : pb;
            if (basis == LabelBasis::pm) {
                out.push_back(base);
                if (pp >= 0) out.push_back(base | (uint32_t(1) << pp));
                else throw IntegrityError("merge: two dotted circles");
            } else {
                out.push_back(base); // (dotted, 1) -> dotted; (dotted, X) dies
            }
        }
    }
}

std::vector<DegreeBasis> enumerate_bases(const PlanarDiagram& d, bool reduced,
                                         const BuildOptions& opts) {
    const uint32_t n = uint32_t(d.n_crossings());
    if (n > 26) throw CapacityError("diagram has more than 26 crossings");
    if (reduced && !d.pointed())
        throw PreconditionError("reduced complex requires a pointed diagram");
    std::vector<DegreeBasis> degs(n + 1);
    for (uint32_t r = 0; r <= n; ++r) {
        DegreeBasis& db = degs[r];
        uint32_t key = r == 0 ? 0 : (uint32_t(1) << r) - 1;
        while (true) {
            ResolutionEntry e = make_entry(d, bit_reverse(key, n), reduced);
            e.offset = db.total;
            db.total += std::size_t(1) << e.n_labeled();
            if (db.total > opts.max_states_per_degree)
                throw CapacityError("degree " + std::to_string(r) + " exceeds state cap");
            db.entries.push_back(std::move(e));
            if (r == 0 || n == 0) break;
            if (key >= (r == n ? key : (((uint32_t(1) << r) - 1) << (n - r)))) break;
            key = next_same_popcount(key);
        }
    }
    return degs;
}

} // namespace

const ResolutionEntry* DegreeBasis::find(uint32_t bits, uint32_t n_crossings) const {
    uint32_t key = bit_reverse(bits, n_crossings);
    std::size_t lo = 0, hi = entries.size();
    while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        uint32_t k = bit_reverse(entries[mid].bits, n_crossings);
        if (k < key)
            lo = mid + 1;
        else
            hi = mid;
    }
    if (lo < entries.size() && entries[lo].bits == bits) return &entries[lo];
    return nullptr;
}

std::size_t Complex::state_index(int degree, const EnhancedState& s) const {
    const DegreeBasis& db = degrees.at(std::size_t(degree));
    const ResolutionEntry* e = db.find(s.bits, uint32_t(diagram.n_crossings()));
    if (!e) throw PreconditionError("state_index: unknown resolution");
    return e->offset + bit_reverse(s.labels, e->n_labeled());
}

EnhancedState Complex::state_at(int degree, std::size_t index) const {
    const DegreeBasis& db = degrees.at(std::size_t(degree));
    std::size_t lo = 0, hi = db.entries.size() - 1;
    while (lo < hi) {
        std::size_t mid = (lo + hi + 1) / 2;
        if (db.entries[mid].offset <= index)
            lo = mid;
        else
            hi = mid - 1;
    }
    const ResolutionEntry& e = db.entries[lo];
    EnhancedState s;
    s.bits = e.bits;
    s.labels = bit_reverse(uint32_t(index - e.offset), e.n_labeled());
    return s;
}

std::vector<std::size_t> chain_dims(const PlanarDiagram& d, bool reduced,
                                    const BuildOptions& opts) {
    std::vector<DegreeBasis> degs = enumerate_bases(d, reduced, opts);
    std::vector<std::size_t> dims;
    dims.reserve(degs.size());
    for (const auto& db : degs) dims.push_back(db.total);
    return dims;
}

Complex build_complex(const PlanarDiagram& d, bool reduced, LabelBasis basis,
                      const BuildOptions& opts) {
    Complex out;
    out.diagram = d;
    out.reduced = reduced;
    out.basis = basis;
    out.degrees = enumerate_bases(d, reduced, opts);
    const uint32_t n = uint32_t(d.n_crossings());
    out.cx.min_degree = 0;
    for (const auto& db : out.degrees) out.cx.dims.push_back(db.total);

    for (uint32_t r = 0; r < n; ++r) {
        const DegreeBasis& src_deg = out.degrees[r];
        const DegreeBasis& tgt_deg = out.degrees[r + 1];
        f2::BitMatrix m(tgt_deg.total, src_deg.total);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 4)
#endif
        for (std::ptrdiff_t ti = 0; ti < std::ptrdiff_t(tgt_deg.entries.size()); ++ti) {
            const ResolutionEntry& tgt = tgt_deg.entries[std::size_t(ti)];
            std::vector<uint32_t> pre;
            for (uint32_t c = 0; c < n; ++c) {
                if (!((tgt.bits >> c) & 1)) continue;
                const ResolutionEntry* src = src_deg.find(tgt.bits ^ (uint32_t(1) << c), n);
                if (!src) throw IntegrityError("build: missing source resolution");
                Flip f = analyze_flip(*src, tgt);
                const uint32_t nt = tgt.n_labeled();
                for (uint32_t tk = 0; tk < (uint32_t(1) << nt); ++tk) {
                    uint32_t tlabels = bit_reverse(tk, nt);
                    pre.clear();
                    reverse_labels(*src, tgt, f, basis, tlabels, pre);
                    for (uint32_t sl : pre) {
                        std::size_t col = src->offset + bit_reverse(sl, src->n_labeled());
                        m.set(tgt.offset + tk, col, true);
                    }
                }
            }
        }
        out.cx.diffs.push_back(std::move(m));
    }
    return out;
}

Complex build_complex_reference(const PlanarDiagram& d, bool reduced, LabelBasis basis,
                                const BuildOptions& opts) {
    Complex out;
    out.diagram = d;
    out.reduced = reduced;
    out.basis = basis;
    out.degrees = enumerate_bases(d, reduced, opts);
    const uint32_t n = uint32_t(d.n_crossings());
    out.cx.min_degree = 0;
    for (const auto& db : out.degrees) out.cx.dims.push_back(db.total);

    for (uint32_t r = 0; r < n; ++r) {
        const DegreeBasis& src_deg = out.degrees[r];
        const DegreeBasis& tgt_deg = out.degrees[r + 1];
        f2::BitMatrix m(tgt_deg.total, src_deg.total);
        std::vector<uint32_t> img;
        for (const ResolutionEntry& src : src_deg.entries) {
            for (uint32_t c = 0; c < n; ++c) {
                if ((src.bits >> c) & 1) continue;
                const ResolutionEntry* tgt = tgt_deg.find(src.bits | (uint32_t(1) << c), n);
                if (!tgt) throw IntegrityError("build: missing target resolution");
                Flip f = analyze_flip(src, *tgt);
                const uint32_t ns = src.n_labeled();
                for (uint32_t sk = 0; sk < (uint32_t(1) << ns); ++sk) {
                    uint32_t slabels = bit_reverse(sk, ns);
                    img.clear();
                    forward_labels(src, *tgt, f, basis, slabels, img);
                    for (uint32_t tl : img) {
                        std::size_t row = tgt->offset + bit_reverse(tl, tgt->n_labeled());
                        m.flip(row, src.offset + sk);
                    }
                }
            }
        }
        out.cx.diffs.push_back(std::move(m));
    }
    return out;
}

Complex change_basis_to_pm(const Complex& c) {
    if (c.basis != LabelBasis::one_x)
        throw PreconditionError("change_basis: input must be in the one_x basis");
    // Per resolution block: T[tau, sigma] = 1 iff tau subset sigma; T is its
    // own inverse over F2 and conjugating gives the pm differential.
    std::vector<f2::BitMatrix> T;
    for (const DegreeBasis& db : c.degrees) {
        f2::BitMatrix t(db.total, db.total);
        for (const ResolutionEntry& e : db.entries) {
            uint32_t u = e.n_labeled();
            for (uint32_t sk = 0; sk < (uint32_t(1) << u); ++sk) {
                uint32_t sigma = bit_reverse(sk, u);
                uint32_t tau = sigma;
                while (true) { // all subsets of sigma
                    t.set(e.offset + bit_reverse(tau, u), e.offset + sk, true);
                    if (tau == 0) break;
                    tau = (tau - 1) & sigma;
                }
            }
        }
        T.push_back(std::move(t));
    }
    Complex out = c;
    out.basis = LabelBasis::pm;
    for (std::size_t i = 0; i < c.cx.diffs.size(); ++i)
        out.cx.diffs[i] = T[i + 1].mul(c.cx.diffs[i]).mul(T[i]);
    return out;
}

bool unreduced_splitting_check(const PlanarDiagram& d) {
    if (!d.pointed()) throw PreconditionError("splitting check requires a pointed diagram");
    homalg::HomologySummary hr = homalg::homology_dims(build_complex(d, true).cx);
    homalg::HomologySummary hu = homalg::homology_dims(build_complex(d, false).cx);
    for (std::size_t i = 0; i < hu.homology.size(); ++i) {
        std::size_t red = i < hr.homology.size() ? hr.homology[i] : 0;
        if (hu.homology[i] != 2 * red) return false;
    }
    return true;
}

bool mirror_duality_check(const PlanarDiagram& d, bool reduced) {
    const uint32_t n = uint32_t(d.n_crossings());
    Complex cd = build_complex(d, reduced, LabelBasis::pm);
    Complex cm = build_complex(mirror(d), reduced, LabelBasis::pm);
    const uint32_t full = n == 32 ? ~uint32_t(0) : (uint32_t(1) << n) - 1;
    auto dual_index = [&](int degree, const EnhancedState& s) {
        const ResolutionEntry* e = cd.degrees[std::size_t(degree)].find(s.bits, n);
        uint32_t lmask = (uint32_t(1) << e->n_labeled()) - 1;
        EnhancedState t{s.bits ^ full, s.labels ^ lmask};
        return cm.state_index(int(n) - degree, t);
    };
    for (uint32_t i = 0; i + 1 <= n; ++i) {
        const f2::BitMatrix& md = cd.cx.diffs[i];
        const f2::BitMatrix& mm = cm.cx.diffs[n - i - 1];
        for (std::size_t u = 0; u < md.cols(); ++u) {
            EnhancedState su = cd.state_at(int(i), u);
            std::size_t mu = dual_index(int(i), su); // row index in mm
            for (std::size_t v = 0; v < md.rows(); ++v) {
                EnhancedState sv = cd.state_at(int(i) + 1, v);
                std::size_t mv = dual_index(int(i) + 1, sv); // column in mm
                if (md.get(v, u) != mm.get(mu, mv)) return false;
            }
        }
    }
    return true;
}

namespace {

bool matrices_equal_under_perm(const f2::BitMatrix& a, const f2::BitMatrix& b,
                               const std::vector<std::size_t>& row_perm,
                               const std::vector<std::size_t>& col_perm) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c)
            if (a.get(r, c) != b.get(row_perm[r], col_perm[c])) return false;
    return true;
}

} // namespace

bool connected_sum_matches_tensor(const PlanarDiagram& d1, const PlanarDiagram& d2,
                                  bool reduced, LabelBasis basis) {
    if (!d1.marked_edge || !d2.marked_edge)
        throw PreconditionError("tensor check requires marked edges on both diagrams");
    PlanarDiagram ds = connected_sum(d1, d2);
    Complex c1 = build_complex(d1, reduced, basis);
    Complex c2 = build_complex(d2, reduced, basis);
    Complex cs = build_complex(ds, reduced, basis);
    homalg::ChainComplex ct = homalg::tensor(c1.cx, c2.cx);
    if (ct.dims != cs.cx.dims) return false;

    const uint32_t n1 = uint32_t(d1.n_crossings());
    const uint32_t nc = uint32_t(ds.n_crossings());
    const std::size_t la = c1.cx.dims.size(), lb = c2.cx.dims.size();

    // tensor index -> connected-sum index, per degree
    std::vector<std::vector<std::size_t>> perm(ct.dims.size());
    for (std::size_t i = 0; i < ct.dims.size(); ++i) {
        perm[i].assign(ct.dims[i], 0);
        std::size_t off = 0;
        for (std::size_t j = 0; j < la; ++j) {
            std::size_t k = i - j;
            if (i < j || k >= lb) continue;
            for (std::size_t x = 0; x < c1.cx.dims[j]; ++x) {
                EnhancedState s1 = c1.state_at(int(j), x);
                const ResolutionEntry* e1 = c1.degrees[j].find(s1.bits, n1);
                for (std::size_t y = 0; y < c2.cx.dims[k]; ++y) {
                    EnhancedState s2 = c2.state_at(int(k), y);
                    const ResolutionEntry* e2 =
                        c2.degrees[k].find(s2.bits, uint32_t(d2.n_crossings()));
                    uint32_t bits = s1.bits | (s2.bits << n1);
                    const ResolutionEntry* es = cs.degrees[i].find(bits, nc);
                    if (!es) return false;
                    uint32_t labels = 0;
                    auto place = [&](const ResolutionEntry& ef, uint32_t slabels,
                                     uint32_t edge_shift, uint32_t free_shift) {
                        for (uint32_t p = 0; p < ef.n_labeled(); ++p) {
                            if (!((slabels >> p) & 1)) continue;
                            uint32_t c = ef.labeled_circle[p];
                            int32_t csum;
                            if (c < ef.res.n_edge_circles) {
                                csum = es->res.circle_of_edge[ef.res.min_edge[c] + edge_shift];
                            } else {
                                csum = int32_t(es->res.n_edge_circles + free_shift +
                                               (c - ef.res.n_edge_circles));
                            }
                            int32_t ps = es->label_pos[std::size_t(csum)];
                            if (ps < 0) throw IntegrityError("tensor bijection: label lost");
                            labels |= uint32_t(1) << ps;
                        }
                    };
                    place(*e1, s1.labels, 0, 0);
                    place(*e2, s2.labels, d1.n_edges, d1.free_circles);
                    perm[i][off + x * c2.cx.dims[k] + y] =
                        es->offset + bit_reverse(labels, es->n_labeled());
                }
            }
            off += c1.cx.dims[j] * c2.cx.dims[k];
        }
    }
    for (std::size_t i = 0; i + 1 < ct.dims.size(); ++i)
        if (!matrices_equal_under_perm(ct.diffs[i], cs.cx.diffs[i], perm[i + 1], perm[i]))
            return false;
    return true;
}

namespace {

uint32_t insert_zero_bit(uint32_t bits, uint32_t c) {
    uint32_t low = bits & ((uint32_t(1) << c) - 1);
    return low | ((bits >> c) << (c + 1));
}

} // namespace

bool crossing_cone_check(const PlanarDiagram& d, std::size_t crossing, bool reduced,
                         LabelBasis basis) {
    const uint32_t n = uint32_t(d.n_crossings());
    if (crossing >= n) throw PreconditionError("cone check: no such crossing");
    const uint32_t c = uint32_t(crossing);
    Complex cd = build_complex(d, reduced, basis);
    Complex c0 = build_complex(resolve_crossing(d, crossing, 0), reduced, basis);
    Complex c1 = build_complex(resolve_crossing(d, crossing, 1), reduced, basis);

    // index of a sub-diagram state inside C(d), per degree
    auto embed = [&](const Complex& sub, int degree, std::size_t idx, int bit) {
        EnhancedState s = sub.state_at(degree, idx);
        EnhancedState t;
        t.bits = insert_zero_bit(s.bits, c) | (bit ? (uint32_t(1) << c) : 0);
        t.labels = s.labels;
        return cd.state_index(degree + bit, t);
    };

    homalg::ChainMap f;
    for (uint32_t i = 0; i + 1 <= n; ++i) {
        std::size_t rows = c1.cx.dim_at(int(i)), cols = c0.cx.dim_at(int(i));
        f2::BitMatrix m(rows, cols);
        if (int(i) < int(cd.cx.diffs.size())) {
            const f2::BitMatrix& dd = cd.cx.diffs[i];
            for (std::size_t x = 0; x < cols; ++x) {
                std::size_t dx = embed(c0, int(i), x, 0);
                for (std::size_t y = 0; y < rows; ++y) {
                    if (dd.get(embed(c1, int(i), y, 1), dx)) m.set(y, x, true);
                }
            }
        }
        f.maps.push_back(std::move(m));
    }
    homalg::ChainComplex cone = homalg::cone(c0.cx, c1.cx, f);
    if (cone.dims != cd.cx.dims) return false;
    std::vector<std::vector<std::size_t>> perm(cd.cx.dims.size());
    for (std::size_t i = 0; i < cone.dims.size(); ++i) {
        perm[i].assign(cone.dims[i], 0);
        std::size_t n0 = c0.cx.dim_at(int(i));
        for (std::size_t x = 0; x < n0; ++x) perm[i][x] = embed(c0, int(i), x, 0);
        for (std::size_t y = 0; y < c1.cx.dim_at(int(i) - 1); ++y)
            perm[i][n0 + y] = embed(c1, int(i) - 1, y, 1);
    }
    for (std::size_t i = 0; i + 1 < cone.dims.size(); ++i)
        if (!matrices_equal_under_perm(cone.diffs[i], cd.cx.diffs[i], perm[i + 1], perm[i]))
            return false;
    return true;
}

SparseChain apply_differential(const PlanarDiagram& d, bool reduced, LabelBasis basis,
                               const SparseChain& chain) {
    if (chain.empty()) return {};
    const uint32_t n = uint32_t(d.n_crossings());
    std::unordered_map<uint32_t, ResolutionEntry> cache;
    auto entry_of = [&](uint32_t bits) -> const ResolutionEntry& {
        auto it = cache.find(bits);
        if (it == cache.end())
            it = cache.emplace(bits, make_entry(d, bits, reduced)).first;
        return it->second;
    };
    const int deg = __builtin_popcount(chain.front().bits);
    std::map<EnhancedState, int> acc;
    std::vector<uint32_t> img;
    for (const EnhancedState& s : chain) {
        if (__builtin_popcount(s.bits) != deg)
            throw PreconditionError("apply_differential: mixed degrees");
        const ResolutionEntry& src = entry_of(s.bits);
        for (uint32_t c = 0; c < n; ++c) {
            if ((s.bits >> c) & 1) continue;
            const ResolutionEntry& tgt = entry_of(s.bits | (uint32_t(1) << c));
            Flip f = analyze_flip(src, tgt);
            img.clear();
            forward_labels(src, tgt, f, basis, s.labels, img);
            for (uint32_t tl : img) acc[EnhancedState{tgt.bits, tl}] ^= 1;
        }
    }
    SparseChain out;
    for (const auto& [st, parity] : acc)
        if (parity) out.push_back(st);
    return out;
}

void WeightHist::add(std::size_t w, std::size_t multiplicity) {
    if (multiplicity == 0) return;
    if (entries == 0 || w < min_w) min_w = w;
    if (entries == 0 || w > max_w) max_w = w;
    counts[w] += multiplicity;
    entries += multiplicity;
}

namespace {

// In the sign basis every split contributes two states and every merge one,
// regardless of labels, so the weight of a matrix row or column only depends
// on the resolutions involved.
WeightHist weight_stream(const PlanarDiagram& d, bool reduced, int degree, bool rows) {
    const uint32_t n = uint32_t(d.n_crossings());
    if (degree < 0 || degree + (rows ? 1 : 0) > int(n))
        throw PreconditionError("weight stream: degree out of range");
    WeightHist h;
    uint32_t r = uint32_t(rows ? degree + 1 : degree);
    uint32_t key = r == 0 ? 0 : (uint32_t(1) << r) - 1;
    const uint32_t last = r == 0 ? 0 : (((uint32_t(1) << r) - 1) << (n - r));
    while (true) {
        uint32_t bits = bit_reverse(key, n);
        ResolutionEntry e = make_entry(d, bits, reduced);
        std::size_t w = 0;
        for (uint32_t c = 0; c < n; ++c) {
            if (rows) {
                if (!((bits >> c) & 1)) continue;
                ResolutionEntry s = make_entry(d, bits ^ (uint32_t(1) << c), reduced);
                // flip up from s to e: split has one preimage, merge two
                w += (e.res.n_edge_circles == s.res.n_edge_circles + 1) ? 1 : 2;
            } else {
                if ((bits >> c) & 1) continue;
                ResolutionEntry t = make_entry(d, bits | (uint32_t(1) << c), reduced);
                w += (t.res.n_edge_circles == e.res.n_edge_circles + 1) ? 2 : 1;
            }
        }
        h.add(w, std::size_t(1) << e.n_labeled());
        if (r == 0 || key == last) break;
        key = next_same_popcount(key);
    }
    return h;
}

} // namespace

WeightHist map_row_weights(const PlanarDiagram& d, bool reduced, int degree) {
    return weight_stream(d, reduced, degree, true);
}

WeightHist map_col_weights(const PlanarDiagram& d, bool reduced, int degree) {
    return weight_stream(d, reduced, degree, false);
}

} // namespace khovcss::kh
