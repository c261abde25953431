#include "khovcss/csscode.hpp"

#include "khovcss/errors.hpp"
#include "khovcss/families.hpp"
#include "khovcss/khovanov.hpp"
#include "khovcss/rmoves.hpp"

#include <doctest.h>

#include <random>

using namespace khovcss;

namespace {

css::CssCode family_code(families::Family f, uint32_t l, uint32_t r = 0) {
    families::FamilySpec s{f, l, r};
    PlanarDiagram d = families::build_diagram(s);
    kh::Complex c = kh::build_complex(d, true);
    css::Provenance prov;
    prov.source = families::family_name(f) + " l=" + std::to_string(l);
    prov.family_l = l;
    if (f == families::Family::torus) prov.family_r = r;
    return css::from_complex_slice(c.cx, s.i0(), prov);
}

} // namespace

TEST_CASE("clasp slice: both matrices are the all-ones row") {
    css::CssCode code = family_code(families::Family::unlink, 1);
    CHECK(code.n == 4);
    REQUIRE(code.h_x.rows() == 1);
    REQUIRE(code.h_z.rows() == 1);
    for (std::size_t c = 0; c < 4; ++c) {
        CHECK(code.h_x.get(0, c));
        CHECK(code.h_z.get(0, c));
    }
    css::CodeParams p = css::params(code);
    CHECK(p.to_string() == "[[4;2;2]] exact");
    CHECK(p.d_x.upper == 2);
    CHECK(p.d_z.upper == 2);
}

TEST_CASE("unknot l=1 slice") {
    css::CssCode code = family_code(families::Family::unknot, 1);
    CHECK(code.n == 5);
    CHECK(f2::rank(code.h_x) == 2);
    CHECK(f2::rank(code.h_z) == 2);
    css::CodeParams p = css::params(code);
    CHECK(p.k == 1);
    CHECK(p.d.exact);
    CHECK(p.d.upper == 2);
}

TEST_CASE("torus l=4 r=2 gives [[12;1;2]]") {
    css::CssCode code = family_code(families::Family::torus, 4, 2);
    css::CodeParams p = css::params(code);
    CHECK(p.n == 12);
    CHECK(p.k == 1);
    CHECK(p.d.exact);
    CHECK(p.d.upper == 2);
    CHECK(p.d_z.upper == 6);
    CHECK(p.d_x.upper == 2);
}

TEST_CASE("edge slices use zero-row matrices") {
    kh::Complex c = kh::build_complex(gen_torus(3), true);
    css::CssCode top = css::from_complex_slice(c.cx, 3);
    CHECK(top.h_x.rows() == 0); // Z-only code
    CHECK(top.h_z.rows() == 6);
    css::CodeParams p = css::params(top);
    CHECK(p.n == 4);
    css::CssCode bottom = css::from_complex_slice(c.cx, 0);
    CHECK(bottom.h_z.rows() == 0);
    CHECK_THROWS_AS(css::from_complex_slice(c.cx, 9), PreconditionError);
}

TEST_CASE("k equals the homology dimension of the slice degree") {
    std::mt19937_64 rng(12);
    for (int t = 0; t < 10; ++t) {
        PlanarDiagram d = rmoves::random_braid_diagram(rng, 3, 6);
        kh::Complex c = kh::build_complex(d, d.pointed());
        homalg::HomologySummary h = homalg::homology_dims(c.cx);
        for (int i0 = 0; i0 <= c.cx.max_degree(); ++i0) {
            if (c.cx.dim_at(i0) == 0) continue;
            css::CssCode code = css::from_complex_slice(c.cx, i0);
            css::DistanceOptions opts;
            opts.exact = false;
            opts.wmax = 0; // k only
            css::CodeParams p = css::params(code, opts);
            CHECK(p.k == h.homology_at(i0));
        }
    }
}

TEST_CASE("H_X H_Z^t = 0 for every slice of every checked complex") {
    std::mt19937_64 rng(13);
    for (int t = 0; t < 10; ++t) {
        PlanarDiagram d = rmoves::random_braid_diagram(rng, 3, 6);
        kh::Complex c = kh::build_complex(d, d.pointed());
        for (int i0 = 0; i0 <= c.cx.max_degree(); ++i0)
            if (c.cx.dim_at(i0) > 0) CHECK_NOTHROW(css::from_complex_slice(c.cx, i0).check());
    }
}

TEST_CASE("distance is invariant under simultaneous column permutation") {
    std::mt19937_64 rng(14);
    css::CssCode code = family_code(families::Family::torus, 4, 2);
    css::CodeParams before = css::params(code);
    std::vector<std::size_t> perm(code.n);
    for (std::size_t i = 0; i < code.n; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    css::CssCode shuffled = code;
    shuffled.h_x = f2::BitMatrix(code.h_x.rows(), code.n);
    shuffled.h_z = f2::BitMatrix(code.h_z.rows(), code.n);
    for (std::size_t r = 0; r < code.h_x.rows(); ++r)
        for (std::size_t c = 0; c < code.n; ++c)
            if (code.h_x.get(r, c)) shuffled.h_x.set(r, perm[c], true);
    for (std::size_t r = 0; r < code.h_z.rows(); ++r)
        for (std::size_t c = 0; c < code.n; ++c)
            if (code.h_z.get(r, c)) shuffled.h_z.set(r, perm[c], true);
    css::CodeParams after = css::params(shuffled);
    CHECK(before.k == after.k);
    CHECK(before.d.upper == after.d.upper);
    CHECK(before.d_x.upper == after.d_x.upper);
    CHECK(before.d_z.upper == after.d_z.upper);
}

TEST_CASE("alist export matches the documented layout") {
    f2::BitMatrix hx = f2::BitMatrix::from_rows({"1111"});
    CHECK(css::export_alist(hx) == "4 1\n1 4\n1 1 1 1\n4\n1\n1\n1\n1\n1 2 3 4\n");
}

TEST_CASE("format round trips are bit exact") {
    css::CssCode code = family_code(families::Family::torus, 3, 2);
    CHECK(css::import_alist(css::export_alist(code.h_x)) == code.h_x);
    CHECK(css::import_alist(css::export_alist(code.h_z)) == code.h_z);
    CHECK(css::import_matrixmarket(css::export_matrixmarket(code.h_x)) == code.h_x);
    css::CssCode back = css::import_json(css::export_json(code));
    CHECK(back.h_x == code.h_x);
    CHECK(back.h_z == code.h_z);
    CHECK(back.provenance.source == code.provenance.source);
    CHECK(back.provenance.i0 == code.provenance.i0);
}

TEST_CASE("export rejects unknown formats; import rejects junk") {
    css::CssCode code = family_code(families::Family::unlink, 1);
    CHECK_THROWS_AS(css::export_code(code, "protobuf"), PreconditionError);
    CHECK_THROWS_AS(css::import_alist("not numbers"), FormatError);
    CHECK_THROWS_AS(css::import_matrixmarket("garbage"), FormatError);
    CHECK_THROWS_AS(css::import_json("{"), FormatError);
}

TEST_CASE("exports are deterministic") {
    css::CssCode a = family_code(families::Family::torus, 4, 2);
    css::CssCode b = family_code(families::Family::torus, 4, 2);
    CHECK(css::export_json(a) == css::export_json(b));
    CHECK(css::export_alist(a.h_x) == css::export_alist(b.h_x));
    CHECK(css::export_matrixmarket(a.h_z) == css::export_matrixmarket(b.h_z));
}

TEST_CASE("torus sparseness audit: constant qubit degrees") {
    css::CssCode code = family_code(families::Family::torus, 5, 3);
    css::WeightReport w = css::sparseness_audit(code);
    REQUIRE(w.family_bound_ok.has_value());
    CHECK(*w.family_bound_ok);
    CHECK(w.hx_cols.size() == 1);
    CHECK(w.hx_cols.begin()->first == 4); // 2(l-r)
    CHECK(w.hz_cols.size() == 1);
    CHECK(w.hz_cols.begin()->first == 3); // r
}

TEST_CASE("unknot sparseness audit: stabilizer weights in the window") {
    css::CssCode code = family_code(families::Family::unknot, 2);
    css::WeightReport w = css::sparseness_audit(code);
    REQUIRE(w.family_bound_ok.has_value());
    CHECK(*w.family_bound_ok);
    for (const auto& [wt, cnt] : w.hx_rows) {
        CHECK(wt >= 3);
        CHECK(wt <= 6);
    }
}

TEST_CASE("zero-row matrix gives an empty histogram") {
    kh::Complex c = kh::build_complex(gen_torus(3), true);
    css::CssCode top = css::from_complex_slice(c.cx, 3);
    css::WeightReport w = css::sparseness_audit(top);
    CHECK(w.hx_rows.empty());
}
