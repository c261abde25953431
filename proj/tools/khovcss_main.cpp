#include "khovcss/asymptotics.hpp"
#include "khovcss/csscode.hpp"
#include "khovcss/diagram.hpp"
#include "khovcss/errors.hpp"
#include "khovcss/families.hpp"
#include "khovcss/homalg.hpp"
#include "khovcss/khovanov.hpp"
#include "khovcss/rmoves.hpp"
#include "khovcss/threads.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace khovcss;

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCapacity = 3;

struct CommonArgs {
    std::string family;
    uint32_t l = 1;
    uint32_t r = 0;
    std::string diagram_file;
    bool unreduced = false;
    std::string basis = "pm";
    std::string out;
    int threads = 0;
};

void add_diagram_flags(CLI::App* cmd, CommonArgs& a, bool need_r) {
    cmd->add_option("--family", a.family, "unknot | unlink | torus");
    cmd->add_option("--l", a.l, "family size parameter");
    if (need_r) cmd->add_option("--r", a.r, "slice degree (torus)");
    cmd->add_option("--diagram", a.diagram_file, "diagram JSON file instead of a family");
    cmd->add_flag("--unreduced", a.unreduced, "use the unreduced complex");
    cmd->add_option("--basis", a.basis, "pm | one_x")->check(CLI::IsMember({"pm", "one_x"}));
    cmd->add_option("--out,-o", a.out, "output path or prefix (default: stdout)");
    cmd->add_option("--threads", a.threads, "worker thread cap (or env KHOVCSS_THREADS)");
}

PlanarDiagram load_diagram(const CommonArgs& a, families::FamilySpec* spec_out = nullptr) {
    if (!a.diagram_file.empty()) {
        std::ifstream in(a.diagram_file);
        if (!in) throw PreconditionError("cannot open " + a.diagram_file);
        std::stringstream ss;
        ss << in.rdbuf();
        return PlanarDiagram::from_json(ss.str());
    }
    auto fam = families::family_from_name(a.family);
    if (!fam) throw PreconditionError("--family must be unknot, unlink or torus");
    families::FamilySpec s{*fam, a.l, a.r};
    if (*fam != families::Family::torus) s.r = 0;
    s.validate();
    if (spec_out) *spec_out = s;
    return families::build_diagram(s);
}

kh::LabelBasis basis_of(const CommonArgs& a) {
    return a.basis == "one_x" ? kh::LabelBasis::one_x : kh::LabelBasis::pm;
}

void write_output(const std::string& path, const std::string& payload) {
    if (path.empty() || path == "-") {
        std::cout << payload;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw PreconditionError("cannot write " + path);
    out << payload;
}

std::pair<uint32_t, uint32_t> parse_range(const std::string& s) {
    auto dots = s.find("..");
    if (dots == std::string::npos) {
        uint32_t v = uint32_t(std::stoul(s));
        return {v, v};
    }
    return {uint32_t(std::stoul(s.substr(0, dots))), uint32_t(std::stoul(s.substr(dots + 2)))};
}

int cmd_gen(const CommonArgs& a) {
    PlanarDiagram d = load_diagram(a);
    write_output(a.out, d.to_json() + "\n");
    return kExitOk;
}

int cmd_complex(const CommonArgs& a) {
    PlanarDiagram d = load_diagram(a);
    kh::Complex c = kh::build_complex(d, !a.unreduced, basis_of(a));
    nlohmann::ordered_json j;
    j["min_degree"] = c.cx.min_degree;
    j["dims"] = c.cx.dims;
    j["reduced"] = !a.unreduced;
    j["basis"] = a.basis;
    j["generators"] = "enhanced states, resolution word then label word, lexicographic";
    std::string prefix = a.out.empty() ? "complex" : a.out;
    write_output(prefix + ".json", j.dump(2) + "\n");
    for (std::size_t i = 0; i < c.cx.diffs.size(); ++i)
        write_output(prefix + ".d" + std::to_string(i) + ".mtx",
                     css::export_matrixmarket(c.cx.diffs[i]));
    std::cout << "chain dims:";
    for (auto v : c.cx.dims) std::cout << ' ' << v;
    std::cout << "\nwrote " << prefix << ".json and " << c.cx.diffs.size()
              << " differential files\n";
    return kExitOk;
}

css::CssCode make_code(const CommonArgs& a, int i0_flag) {
    families::FamilySpec spec;
    bool have_spec = a.diagram_file.empty();
    PlanarDiagram d = load_diagram(a, &spec);
    kh::Complex c = kh::build_complex(d, !a.unreduced, basis_of(a));
    int i0 = i0_flag;
    if (have_spec && i0 < 0) i0 = spec.i0();
    if (i0 < 0) throw PreconditionError("--i0 is required for diagram input");
    css::Provenance prov;
    prov.source = have_spec ? families::family_name(spec.family) + " l=" + std::to_string(spec.l)
                            : "file:" + a.diagram_file;
    prov.reduced = !a.unreduced;
    prov.basis = a.basis;
    if (have_spec) {
        prov.family_l = spec.l;
        if (spec.family == families::Family::torus) prov.family_r = spec.r;
    }
    return css::from_complex_slice(c.cx, i0, prov);
}

int cmd_css(const CommonArgs& a, int i0_flag, const std::string& format) {
    css::CssCode code = make_code(a, i0_flag);
    std::string prefix = a.out.empty() ? "code" : a.out;
    for (const auto& [suffix, payload] : css::export_code(code, format))
        write_output(prefix + "." + suffix, payload);
    std::cout << "n=" << code.n << " rows(HX)=" << code.h_x.rows()
              << " rows(HZ)=" << code.h_z.rows() << " -> " << prefix << ".*\n";
    return kExitOk;
}

int cmd_params(const CommonArgs& a, int i0_flag, const std::string& mode, uint32_t budget,
               uint32_t wmax, bool audit, bool as_json) {
    css::CssCode code = make_code(a, i0_flag);
    css::DistanceOptions opts;
    opts.exact = mode != "bounded";
    opts.enum_budget = budget;
    opts.wmax = wmax;
    css::CodeParams p = css::params(code, opts);
    if (as_json) {
        nlohmann::ordered_json j;
        j["n"] = p.n;
        j["k"] = p.k;
        j["d"] = p.d.to_string();
        j["d_exact"] = p.d.exact;
        j["d_x"] = p.d_x.to_string();
        j["d_z"] = p.d_z.to_string();
        if (audit) {
            css::WeightReport w = css::sparseness_audit(code);
            j["hx_row_weights"] = w.hx_rows;
            j["hz_row_weights"] = w.hz_rows;
            j["hx_col_weights"] = w.hx_cols;
            j["hz_col_weights"] = w.hz_cols;
            if (w.family_bound_ok) j["family_bound_ok"] = *w.family_bound_ok;
        }
        write_output(a.out, j.dump() + "\n");
    } else {
        std::ostringstream out;
        out << p.to_string() << "  (d_x=" << p.d_x.to_string() << ", d_z=" << p.d_z.to_string()
            << ")\n";
        if (audit) {
            css::WeightReport w = css::sparseness_audit(code);
            out << "H_X row weights:";
            for (auto& [k, v] : w.hx_rows) out << " " << k << "x" << v;
            out << "\nH_Z row weights:";
            for (auto& [k, v] : w.hz_rows) out << " " << k << "x" << v;
            if (w.family_bound_ok)
                out << "\nfamily degree check (" << w.family_bound_desc << "): "
                    << (*w.family_bound_ok ? "ok" : "VIOLATED");
            out << "\n";
        }
        write_output(a.out, out.str());
    }
    return kExitOk;
}

int cmd_verify(const CommonArgs& a, const std::string& l_range, const std::string& mode,
               uint32_t budget) {
    auto fam = families::family_from_name(a.family);
    if (!fam) throw PreconditionError("--family must be unknot, unlink or torus");
    auto [lo, hi] = parse_range(l_range);
    families::VerifyOptions opts;
    opts.distance.exact = mode != "bounded";
    opts.distance.enum_budget = budget;
    std::vector<families::InstanceReport> reports = families::verify_family(*fam, lo, hi, opts);
    std::ostringstream lines;
    bool all_pass = true;
    std::cout << "family      l  r   expected            computed            verdict\n";
    for (const auto& rep : reports) {
        lines << rep.to_json() << "\n";
        all_pass = all_pass && rep.pass;
        std::ostringstream exp, got;
        exp << "[[" << rep.n_expected << ";" << rep.k_expected << ";" << rep.d_expected << "]]";
        got << "[[" << rep.n_computed << ";" << rep.k_computed << ";"
            << rep.d_computed.to_string() << "]]";
        std::cout << family_name(rep.spec.family) << std::string(12 - family_name(rep.spec.family).size(), ' ')
                  << rep.spec.l << "  " << (rep.spec.family == families::Family::torus
                                                ? std::to_string(rep.spec.r)
                                                : std::string("-"))
                  << "   " << exp.str() << std::string(exp.str().size() < 20 ? 20 - exp.str().size() : 1, ' ')
                  << got.str() << std::string(got.str().size() < 20 ? 20 - got.str().size() : 1, ' ')
                  << (rep.pass ? "pass" : "FAIL") << "\n";
    }
    if (!a.out.empty()) write_output(a.out, lines.str());
    std::cout << (all_pass ? "all instances pass\n" : "MISMATCH detected\n");
    return all_pass ? kExitOk : kExitMismatch;
}

int cmd_asymptotics(const std::string& suite, uint32_t lmax, const std::string& format,
                    const std::string& out) {
    std::ostringstream text;
    bool ok = true;
    if (suite == "legendre" || suite == "all") {
        uint32_t bad = 0;
        double worst = 0;
        for (uint32_t l = 0; l <= std::min(lmax, 200u); ++l) {
            asym::LegendreCheck c = asym::legendre_check(l);
            worst = std::max(worst, c.recurrence_rel_err);
            if (!c.pass) ++bad;
        }
        ok = ok && bad == 0;
        text << "legendre: l<=" << std::min(lmax, 200u) << " failures=" << bad
             << " worst_rel_err=" << worst << "\n";
    }
    if (suite == "sumsquares" || suite == "all") {
        for (uint32_t l : {100u, 1000u, 10000u}) {
            double r1 = asym::sum_squares_ratio(l, mpq_class(2));
            double r2 = asym::unlink_T_ratio(l);
            text << "ratios l=" << l << ": squares(x=2)=" << r1 << " lengths=" << r2 << "\n";
        }
    }
    if (suite == "bestparam" || suite == "all") {
        asym::BestParamReport rep = asym::best_param_check(2, lmax);
        ok = ok && rep.suffix_all_true;
        text << "bestparam: threshold=" << rep.verdict_threshold
             << " band_threshold=" << rep.band_threshold
             << " suffix_all_true=" << (rep.suffix_all_true ? "yes" : "no") << "\n";
        if (format == "csv") text << rep.to_csv();
        if (format == "json") text << rep.to_json() << "\n";
    }
    write_output(out, text.str());
    if (out != "-" && !out.empty()) std::cout << (ok ? "asymptotics ok\n" : "asymptotics MISMATCH\n");
    return ok ? kExitOk : kExitMismatch;
}

int cmd_weights(const std::string& rmove, uint32_t count, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::cout << "# exploratory minimal homology weights across one " << rmove << " move\n";
    std::cout << "# columns: instance, degree, d_before, d_after(shifted degree)\n";
    for (uint32_t t = 0; t < count; ++t) {
        PlanarDiagram d1, d2;
        int eta = 0;
        if (rmove == "r2") {
            d1 = rmoves::random_braid_diagram(rng, 3, 4);
            if (d1.n_edges < 2) { --t; continue; }
            std::uniform_int_distribution<uint32_t> e_d(0, d1.n_edges - 1);
            uint32_t e = e_d(rng), f = e_d(rng);
            if (e == f) { --t; continue; }
            d2 = rmoves::r2_move(d1, e, f);
            eta = 1;
        } else {
            auto pair = rmoves::r3_pair(rng);
            d1 = pair.first;
            d2 = pair.second;
        }
        kh::Complex c1 = kh::build_complex(d1, d1.pointed());
        kh::Complex c2 = kh::build_complex(d2, d2.pointed());
        for (int i = 0; i <= c1.cx.max_degree(); ++i) {
            if (c1.cx.dim_at(i) == 0) continue;
            f2::MinWeightResult a = homalg::min_homology_weight(c1.cx, i);
            if (a.infinite) continue;
            f2::MinWeightResult b = homalg::min_homology_weight(c2.cx, i + eta);
            std::cout << t << " " << i << " " << (a.exact ? std::to_string(a.upper) : "?")
                      << " "
                      << (b.infinite ? "inf" : (b.exact ? std::to_string(b.upper) : "?"))
                      << "\n";
        }
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Khovanov chain complexes over F2 and the CSS codes of their slices"};
    app.require_subcommand(1);

    CommonArgs a;
    int i0_flag = -1;
    std::string format = "alist";
    std::string mode = "exact";
    uint32_t budget = 24, wmax = 6;
    bool audit = false, as_json = false;
    std::string l_range = "1..1";
    std::string suite = "all";
    uint32_t lmax = 2000;
    std::string rmove = "r2";
    uint32_t count = 10;
    uint64_t seed = 1;

    CLI::App* gen = app.add_subcommand("gen", "write a family diagram as JSON");
    add_diagram_flags(gen, a, false);

    CLI::App* complex = app.add_subcommand("complex", "chain groups and differentials");
    add_diagram_flags(complex, a, true);

    CLI::App* csscmd = app.add_subcommand("css", "export the slice code matrices");
    add_diagram_flags(csscmd, a, true);
    csscmd->add_option("--i0", i0_flag, "slice degree (defaults to the family slice)");
    csscmd->add_option("--format", format, "alist | matrixmarket | json")
        ->check(CLI::IsMember({"alist", "matrixmarket", "json"}));

    CLI::App* params = app.add_subcommand("params", "compute [[n;k;d]]");
    add_diagram_flags(params, a, true);
    params->add_option("--i0", i0_flag, "slice degree (defaults to the family slice)");
    params->add_option("--distance", mode, "exact | bounded")
        ->check(CLI::IsMember({"exact", "bounded"}));
    params->add_option("--budget", budget, "kernel dimension cap for full enumeration");
    params->add_option("--wmax", wmax, "weight cap in bounded mode");
    params->add_flag("--audit", audit, "include the sparseness audit");
    params->add_flag("--json", as_json, "machine-readable output");

    CLI::App* verify = app.add_subcommand("verify", "family catalog vs computation");
    verify->add_option("--family", a.family, "unknot | unlink | torus")->required();
    verify->add_option("--l", l_range, "size or range a..b")->required();
    verify->add_option("--distance", mode, "exact | bounded")
        ->check(CLI::IsMember({"exact", "bounded"}));
    verify->add_option("--budget", budget, "kernel dimension cap");
    verify->add_option("--out,-o", a.out, "JSON-lines report path");
    verify->add_option("--threads", a.threads, "worker thread cap");

    CLI::App* asy = app.add_subcommand("asymptotics", "convergence and inequality suites");
    asy->add_option("--suite", suite, "legendre | sumsquares | bestparam | all")
        ->check(CLI::IsMember({"legendre", "sumsquares", "bestparam", "all"}));
    asy->add_option("--lmax", lmax, "upper end of the scan");
    asy->add_option("--format", format, "text | csv | json");
    asy->add_option("--out,-o", a.out, "output path");
    asy->add_option("--threads", a.threads, "worker thread cap");

    CLI::App* weights = app.add_subcommand("weights", "exploratory move/weight data");
    weights->add_option("--rmove", rmove, "r2 | r3")->check(CLI::IsMember({"r2", "r3"}));
    weights->add_option("--count", count, "number of random instances");
    weights->add_option("--seed", seed, "RNG seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        khovcss::threads::set_max(a.threads);
        if (gen->parsed()) return cmd_gen(a);
        if (complex->parsed()) return cmd_complex(a);
        if (csscmd->parsed()) return cmd_css(a, i0_flag, format);
        if (params->parsed()) return cmd_params(a, i0_flag, mode, budget, wmax, audit, as_json);
        if (verify->parsed()) return cmd_verify(a, l_range, mode, budget);
        if (asy->parsed())
            return cmd_asymptotics(suite, lmax, format, a.out.empty() ? "-" : a.out);
        if (weights->parsed()) return cmd_weights(rmove, count, seed);
    } catch (const khovcss::CapacityError& e) {
        std::cerr << "capacity: " << e.what() << "\n";
        return kExitCapacity;
    } catch (const khovcss::PreconditionError& e) {
        std::cerr << "usage: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitMismatch;
    }
    return kExitUsage;
}
