#include "khovcss/families.hpp"

#include "khovcss/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>

namespace khovcss::families {

std::string family_name(Family f) {
    switch (f) {
        case Family::unknot: return "unknot";
        case Family::unlink: return "unlink";
        case Family::torus: return "torus";
    }
    return "?";
}

std::optional<Family> family_from_name(const std::string& s) {
    if (s == "unknot") return Family::unknot;
    if (s == "unlink") return Family::unlink;
    if (s == "torus") return Family::torus;
    return std::nullopt;
}

void FamilySpec::validate() const {
    if (l == 0) throw PreconditionError("family size l must be >= 1");
    if (family == Family::torus) {
        if (r < 2 || r > l)
            throw PreconditionError("torus slice degree r must satisfy 2 <= r <= l");
    }
}

int FamilySpec::i0() const { return family == Family::torus ? int(r) : int(l); }

PlanarDiagram build_diagram(const FamilySpec& s) {
    s.validate();
    switch (s.family) {
        case Family::unknot: return gen_unknot(s.l);
        case Family::unlink: return gen_unlink(s.l);
        case Family::torus: return gen_torus(s.l);
    }
    throw PreconditionError("unknown family");
}

namespace {

mpz_class binom(uint32_t n, uint32_t k) {
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

mpz_class pow2(uint32_t e) {
    mpz_class r = 1;
    mpz_mul_2exp(r.get_mpz_t(), r.get_mpz_t(), e);
    return r;
}

} // namespace

ExpectedParams expected_params(const FamilySpec& s) {
    s.validate();
    ExpectedParams p;
    switch (s.family) {
        case Family::unknot: {
            p.n = 0;
            for (uint32_t r = 0; r <= s.l; ++r) {
                mpz_class t = binom(s.l, r) * pow2(r);
                p.n += t * t;
            }
            p.k = 1;
            p.d = p.d_x = p.d_z = pow2(s.l);
            break;
        }
        case Family::unlink: {
            p.n = 0;
            for (uint32_t r = 0; r <= s.l; ++r)
                p.n += binom(s.l, r) * binom(2 * r, r) * pow2(s.l - r);
            p.k = pow2(s.l);
            p.d = p.d_x = p.d_z = pow2(s.l);
            break;
        }
        case Family::torus: {
            p.n = pow2(s.r - 1) * binom(s.l, s.r);
            p.k = 1;
            p.d_z = binom(s.l, s.r);
            p.d_x = pow2(s.r - 1);
            p.d = std::min(p.d_z, p.d_x);
            break;
        }
    }
    return p;
}

mpz_class expected_chain_dim(Family f, uint32_t l, uint32_t degree) {
    switch (f) {
        case Family::unknot: {
            // coefficient of t^degree in (1+2t)^l (2+t)^l
            mpz_class n = 0;
            for (uint32_t a = 0; a <= std::min(degree, l); ++a) {
                uint32_t b = degree - a;
                if (b > l) continue;
                n += binom(l, a) * pow2(a) * binom(l, b) * pow2(l - b);
            }
            return n;
        }
        case Family::unlink: {
            // coefficient of t^degree in (1+4t+t^2)^l
            mpz_class n = 0;
            for (uint32_t j = 0; 2 * j <= degree; ++j) {
                uint32_t ones = degree - 2 * j; // count of 4t factors
                if (ones + j > l) continue;
                n += binom(l, j) * binom(l - j, ones) * pow2(2 * ones);
            }
            return n;
        }
        case Family::torus:
            if (degree == 0) return l >= 1 ? 2 : 1;
            return pow2(degree - 1) * binom(l, degree);
    }
    return 0;
}

kh::SparseChain torus_witness(uint32_t l, uint32_t r, const std::vector<bool>& eps_plus) {
    if (r < 2 || r > l) throw PreconditionError("torus_witness: need 2 <= r <= l");
    if (eps_plus.size() != l - 1)
        throw PreconditionError("torus_witness: eps needs l-1 entries");
    kh::SparseChain out;
    // compositions a + b_1 + ... + b_{r-1} + c = l - r over r+1 parts
    std::vector<uint32_t> parts(r + 1, 0);
    parts[0] = l - r;
    while (true) {
        // crossing positions p_i; plain circle i spans originals p_i+1 .. p_{i+1}
        uint32_t bits = 0;
        uint32_t p = parts[0];
        std::vector<uint32_t> pos(r);
        for (uint32_t i = 0; i < r; ++i) {
            pos[i] = p;
            bits |= uint32_t(1) << p;
            if (i + 1 < r) p += 1 + parts[i + 1];
        }
        uint32_t labels = 0;
        for (uint32_t i = 1; i < r; ++i) {
            uint32_t bi = parts[i];
            uint32_t lo = pos[i - 1] + 1; // first absorbed plain circle (1-based eps index)
            uint32_t minus = 1 + bi;
            for (uint32_t j = lo; j <= lo + bi; ++j)
                if (!eps_plus[j - 1]) ++minus;
            if (minus % 2 == 0) labels |= uint32_t(1) << (i - 1);
        }
        out.push_back(kh::EnhancedState{bits, labels});

        // next composition (colex)
        uint32_t i = 0;
        while (i + 1 < parts.size() && parts[i] == 0) ++i;
        if (i + 1 == parts.size()) break;
        uint32_t v = parts[i];
        parts[i] = 0;
        parts[0] = v - 1;
        parts[i + 1] += 1;
    }
    std::sort(out.begin(), out.end());
    return out;
}

WitnessCheck check_torus_witness(uint32_t l, uint32_t r, const std::vector<bool>& eps_plus,
                                 std::size_t dense_limit) {
    WitnessCheck w;
    PlanarDiagram d = gen_torus(l);
    kh::SparseChain v = torus_witness(l, r, eps_plus);
    w.weight = v.size();
    mpz_class want = binom(l, r);
    w.weight_ok = (want == long(v.size()));
    w.cycle_ok = kh::apply_differential(d, true, kh::LabelBasis::pm, v).empty();

    // nonboundary certificate against the witness's first resolution
    uint32_t phi = v.front().bits;
    std::size_t hits = 0;
    for (const auto& s : v) hits += s.bits == phi;
    bool all_split = true;
    Resolution tgt = trace_circles(d, phi);
    for (uint32_t c = 0; c < l; ++c) {
        if (!((phi >> c) & 1)) continue;
        Resolution src = trace_circles(d, phi ^ (uint32_t(1) << c));
        if (tgt.n_edge_circles != src.n_edge_circles + 1) all_split = false;
    }
    w.nonboundary_certified = all_split && (hits % 2 == 1);

    std::vector<std::size_t> dims = kh::chain_dims(d, true);
    std::size_t big = *std::max_element(dims.begin(), dims.end());
    if (big <= dense_limit) {
        kh::Complex cx = kh::build_complex(d, true);
        f2::BitVec vec(cx.cx.dims[r]);
        for (const auto& s : v) vec.flip(cx.state_index(int(r), s));
        f2::BitVec img = cx.cx.diff_at(int(r)).mul_vec(vec);
        bool in_image = f2::in_rowspace(cx.cx.diff_at(int(r) - 1).transpose(), vec);
        w.dense_checked = true;
        w.dense_ok = img.is_zero() && !in_image;
    }
    return w;
}

SubfamilyConstants subfamily_constants(double precision) {
    if (precision < 1e-16) precision = 1e-16;
    auto f = [](long double x) {
        return x * std::log(2.0L * x) + (1.0L - x) * std::log1p(-x);
    };
    long double lo = 0.5L, hi = 1.0L - 1e-18L;
    for (int i = 0; i < 200 && (hi - lo) > precision / 4; ++i) {
        long double mid = (lo + hi) / 2;
        if (f(mid) > 0)
            hi = mid;
        else
            lo = mid;
    }
    SubfamilyConstants c;
    long double a0 = (lo + hi) / 2;
    c.alpha0 = double(a0);
    long double b0 = 1.0L / (2.0L * std::log(2.0L * a0 / (1.0L - a0)));
    c.beta0 = double(b0);
    c.gamma0 = double(b0 * std::log(2.0L / (M_PIl * a0 * (1.0L - a0))));
    return c;
}

uint32_t r_of_l(uint32_t l) {
    SubfamilyConstants c = subfamily_constants();
    double x = c.alpha0 * l - c.beta0 * std::log(double(l)) + c.gamma0;
    return uint32_t(std::floor(x + 0.5));
}

double subfamily_eps(uint32_t l) {
    SubfamilyConstants c = subfamily_constants();
    double x = c.alpha0 * l - c.beta0 * std::log(double(l)) + c.gamma0;
    return double(r_of_l(l)) - x;
}

bool sparseness_check(const FamilySpec& s) {
    s.validate();
    PlanarDiagram d = build_diagram(s);
    if (s.family == Family::torus) {
        kh::WeightHist hx_cols = kh::map_col_weights(d, true, int(s.r));
        kh::WeightHist hz_cols = kh::map_row_weights(d, true, int(s.r) - 1);
        bool ok = hx_cols.counts.size() == 1 && hx_cols.min_w == 2 * (s.l - s.r);
        ok = ok && hz_cols.counts.size() == 1 && hz_cols.min_w == s.r;
        return ok;
    }
    kh::WeightHist hx_rows = kh::map_row_weights(d, true, int(s.l));
    kh::WeightHist hz_rows = kh::map_col_weights(d, true, int(s.l) - 1);
    auto in_range = [&](const kh::WeightHist& h) {
        return h.min_w >= s.l + 1 && h.max_w <= 2 * (s.l + 1);
    };
    return in_range(hx_rows) && in_range(hz_rows);
}

std::string InstanceReport::to_json() const {
    nlohmann::ordered_json j;
    j["family"] = family_name(spec.family);
    j["l"] = spec.l;
    if (spec.family == Family::torus) j["r"] = spec.r;
    j["pass"] = pass;
    j["exact"] = exact;
    j["n_expected"] = n_expected;
    j["n_computed"] = n_computed;
    j["k_expected"] = k_expected;
    j["k_computed"] = k_computed;
    j["d_expected"] = d_expected;
    j["d_computed"] = d_computed.to_string();
    j["d_x"] = dx_computed.to_string();
    j["d_z"] = dz_computed.to_string();
    j["dims_ok"] = dims_ok;
    j["k_ok"] = k_ok;
    j["d_ok"] = d_ok;
    if (spec.family == Family::torus) {
        j["witness_ok"] = witness_ok;
        j["mirror_distance_ok"] = mirror_distance_ok;
    }
    j["sparseness_ok"] = sparseness_ok;
    if (!notes.empty()) j["notes"] = notes;
    return j.dump();
}

InstanceReport verify_instance(const FamilySpec& s, const VerifyOptions& opts) {
    s.validate();
    InstanceReport rep;
    rep.spec = s;
    ExpectedParams exp = expected_params(s);
    rep.n_expected = exp.n.get_str();
    rep.k_expected = exp.k.get_str();
    rep.d_expected = exp.d.get_str();

    PlanarDiagram d = build_diagram(s);
    kh::Complex cx = kh::build_complex(d, true);
    const int i0 = s.i0();

    rep.n_computed = cx.cx.dim_at(i0);
    rep.dims_ok = (mpz_class(long(rep.n_computed)) == exp.n);
    for (uint32_t deg = 0; deg < cx.cx.dims.size(); ++deg) {
        if (mpz_class(long(cx.cx.dims[deg])) != expected_chain_dim(s.family, s.l, deg)) {
            rep.dims_ok = false;
            rep.notes.push_back("chain dim mismatch at degree " + std::to_string(deg));
        }
    }
    if (s.family == Family::torus && s.r == 2) {
        rep.notes.push_back("degree-2 chain dim follows l(l-1) = 2*binom(l,2); "
                            "the alternative l(l+1) is rejected by computation");
    }

    css::Provenance prov;
    prov.source = family_name(s.family) + " l=" + std::to_string(s.l);
    prov.family_l = s.l;
    if (s.family == Family::torus) prov.family_r = s.r;
    css::CssCode code = css::from_complex_slice(cx.cx, i0, prov);
    css::CodeParams p = css::params(code, opts.distance);
    rep.k_computed = p.k;
    rep.d_computed = p.d;
    rep.dx_computed = p.d_x;
    rep.dz_computed = p.d_z;
    rep.k_ok = (mpz_class(long(p.k)) == exp.k);
    rep.exact = p.d.exact;
    rep.d_ok = !p.d.infinite && p.d.exact && mpz_class(long(p.d.upper)) == exp.d;
    if (s.family == Family::torus) {
        rep.d_ok = rep.d_ok && p.d_z.exact && mpz_class(long(p.d_z.upper)) == exp.d_z;
        rep.d_ok = rep.d_ok && p.d_x.exact && mpz_class(long(p.d_x.upper)) == exp.d_x;
    }

    if (s.family == Family::torus && opts.check_witnesses) {
        std::mt19937_64 rng(opts.rng_seed + s.l * 1000 + s.r);
        for (uint32_t t = 0; t < opts.witness_eps_samples; ++t) {
            std::vector<bool> eps(s.l - 1, false);
            if (t > 0)
                for (std::size_t i = 0; i < eps.size(); ++i) eps[i] = rng() & 1;
            WitnessCheck wc = check_torus_witness(s.l, s.r, eps);
            bool ok = wc.weight_ok && wc.cycle_ok && wc.nonboundary_certified &&
                      (!wc.dense_checked || wc.dense_ok);
            if (!ok) {
                rep.witness_ok = false;
                rep.notes.push_back("witness check failed at sample " + std::to_string(t));
            }
        }
    }
    if (s.family == Family::torus && opts.check_mirror) {
        kh::Complex cm = kh::build_complex(mirror(d), true);
        f2::MinWeightResult mw =
            homalg::min_homology_weight(cm.cx, int(s.l - s.r), opts.distance.to_f2());
        mpz_class want = exp.d_x; // 2^{r-1}, read on the mirror at degree l-r
        rep.mirror_distance_ok =
            mw.exact && !mw.infinite && mpz_class(long(mw.upper)) == want;
        if (!rep.mirror_distance_ok) rep.notes.push_back("mirror-side distance mismatch");
    }
    if (opts.check_sparseness) rep.sparseness_ok = sparseness_check(s);

    rep.pass = rep.dims_ok && rep.k_ok && rep.d_ok && rep.witness_ok &&
               rep.mirror_distance_ok && rep.sparseness_ok;
    return rep;
}

std::vector<InstanceReport> verify_family(Family f, uint32_t l_min, uint32_t l_max,
                                          const VerifyOptions& opts) {
    std::vector<InstanceReport> out;
    for (uint32_t l = l_min; l <= l_max; ++l) {
        if (f == Family::torus) {
            for (uint32_t r = 2; r <= l; ++r)
                out.push_back(verify_instance(FamilySpec{f, l, r}, opts));
        } else {
            out.push_back(verify_instance(FamilySpec{f, l, 0}, opts));
        }
    }
    return out;
}

std::vector<KinkStep> kink_weight_ladder(uint32_t lmax, uint64_t search_work_cap) {
    std::vector<KinkStep> steps;
    PlanarDiagram cur = pointed_circle();
    uint64_t d_prev = 1; // single generator, zero differential
    bool prev_exact = true;
    uint32_t a = 0, b = 0;

    auto do_step = [&](char move) {
        PlanarDiagram factor = move == 'A' ? kink_split() : kink_join();
        PlanarDiagram next = connected_sum(cur, factor);
        KinkStep st;
        st.move = move;
        a += move == 'A';
        b += move == 'B';
        st.a = a;
        st.b = b;
        st.degree = int(a);
        uint64_t d_struct = move == 'A' ? d_prev : 2 * d_prev;

        bool factor_ok = false;
        if (cur.marked_edge.has_value()) {
            factor_ok = kh::connected_sum_matches_tensor(cur, factor, true, kh::LabelBasis::pm);
        }
        st.factorization_checked = factor_ok;

        kh::Complex cx = kh::build_complex(next, true);
        f2::MinWeightOptions mo;
        mo.max_work = search_work_cap;
        f2::MinWeightResult mw = homalg::min_homology_weight(cx.cx, st.degree, mo);
        if (mw.exact && !mw.infinite) {
            st.d_value = mw.upper;
            st.exact = true;
            st.method = factor_ok ? "search+factor" : "search";
            st.relation_ok = (st.d_value == d_struct) && prev_exact;
            if (factor_ok && st.d_value != d_struct) st.relation_ok = false;
        } else if (factor_ok && prev_exact) {
            st.d_value = d_struct;
            st.exact = true;
            st.method = "factor";
            st.relation_ok = true;
        } else {
            st.d_value = mw.found ? mw.upper : 0;
            st.exact = false;
            st.method = "search-incomplete";
            st.relation_ok = false;
        }
        steps.push_back(st);
        cur = next;
        d_prev = st.d_value;
        prev_exact = st.exact;
    };

    for (uint32_t l = 1; l <= lmax; ++l) {
        do_step('A');
        do_step('B');
    }
    return steps;
}

} // namespace khovcss::families
