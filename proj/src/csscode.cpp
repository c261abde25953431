#include "khovcss/csscode.hpp"

#include "khovcss/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <sstream>

namespace khovcss::css {

void CssCode::check() const {
    if (h_x.cols() != n || h_z.cols() != n)
        throw IntegrityError("css: column count mismatch");
    if (!h_x.mul(h_z.transpose()).is_zero())
        throw IntegrityError("css: H_X H_Z^t != 0");
}

std::string DistanceValue::to_string() const {
    if (infinite) return "inf";
    if (exact) return std::to_string(upper);
    return "[" + std::to_string(lower) + "," +
           (upper ? std::to_string(upper) : std::string("?")) + "]";
}

std::string CodeParams::to_string() const {
    std::string ds = d.infinite ? "inf" : std::to_string(d.upper);
    std::string status = d.exact
                             ? std::string("exact")
                             : "bounds[" + std::to_string(d.lower) + "," + ds + "]";
    return "[[" + std::to_string(n) + ";" + std::to_string(k) + ";" + ds + "]] " + status;
}

CssCode from_complex_slice(const homalg::ChainComplex& c, int i0, Provenance prov) {
    std::size_t n = c.dim_at(i0);
    if (n == 0) throw PreconditionError("slice: middle chain group is empty");
    CssCode code;
    code.n = n;
    code.h_x = c.diff_at(i0);
    code.h_z = c.diff_at(i0 - 1).transpose();
    prov.i0 = i0;
    code.provenance = std::move(prov);
    code.check();
    return code;
}

namespace {

DistanceValue from_minweight(const f2::MinWeightResult& r) {
    DistanceValue d;
    d.exact = r.exact;
    d.infinite = r.infinite;
    d.upper = r.found ? r.upper : 0;
    d.lower = r.infinite ? 0 : r.certified_lb;
    d.method = r.method;
    return d;
}

} // namespace

CodeParams params(const CssCode& code, const DistanceOptions& opts) {
    code.check();
    CodeParams p;
    p.n = code.n;
    std::size_t rx = f2::rank(code.h_x), rz = f2::rank(code.h_z);
    if (code.n < rx + rz) throw IntegrityError("params: negative dimension");
    p.k = code.n - rx - rz;
    f2::MinWeightOptions mo = opts.to_f2();
    p.d_z = from_minweight(f2::min_nontrivial_weight(code.h_x, code.h_z, mo));
    p.d_x = from_minweight(f2::min_nontrivial_weight(code.h_z, code.h_x, mo));
    if (p.d_x.infinite && p.d_z.infinite) {
        p.d.infinite = true;
        p.d.exact = true;
    } else if (p.d_x.infinite || p.d_z.infinite) {
        p.d = p.d_x.infinite ? p.d_z : p.d_x;
    } else {
        // min of the sides; exact when the winning side is exact and the
        // other side cannot undercut it
        const DistanceValue& a = p.d_z.upper <= p.d_x.upper ? p.d_z : p.d_x;
        const DistanceValue& b = p.d_z.upper <= p.d_x.upper ? p.d_x : p.d_z;
        p.d = a;
        p.d.exact = a.exact && (b.lower >= a.upper || (b.exact && b.upper >= a.upper));
        p.d.lower = std::min(a.lower, b.lower);
    }
    return p;
}

WeightReport sparseness_audit(const CssCode& code) {
    WeightReport w;
    auto fill = [](const f2::BitMatrix& m, std::map<std::size_t, std::size_t>& rows,
                   std::map<std::size_t, std::size_t>& cols) {
        for (std::size_t r = 0; r < m.rows(); ++r) ++rows[m.row_weight(r)];
        for (std::size_t c = 0; c < m.cols(); ++c) ++cols[m.col_weight(c)];
    };
    fill(code.h_x, w.hx_rows, w.hx_cols);
    fill(code.h_z, w.hz_rows, w.hz_cols);
    const Provenance& p = code.provenance;
    if (p.family_l) {
        uint32_t l = *p.family_l;
        bool ok = true;
        if (p.source.rfind("torus", 0) == 0 && p.family_r) {
            uint32_t r = *p.family_r;
            // constant qubit degrees: 2(l-r) on the H_X side, r on the H_Z side
            ok = ok && (w.hx_cols.size() == 1 && w.hx_cols.begin()->first == 2 * (l - r));
            ok = ok && (w.hz_cols.size() == 1 && w.hz_cols.begin()->first == r);
            w.family_bound_desc = "column weights {2(l-r)} and {r}";
        } else {
            // kink and clasp families: all stabilizer weights in [l+1, 2(l+1)]
            auto in_range = [&](const std::map<std::size_t, std::size_t>& h) {
                for (const auto& [wt, cnt] : h)
                    if (wt < l + 1 || wt > 2 * (l + 1)) return false;
                return true;
            };
            ok = in_range(w.hx_rows) && in_range(w.hz_rows);
            w.family_bound_desc = "row weights within [l+1, 2(l+1)]";
        }
        w.family_bound_ok = ok;
    }
    return w;
}

std::string export_alist(const f2::BitMatrix& m) {
    std::size_t n = m.cols(), rows = m.rows();
    std::vector<std::vector<std::size_t>> by_col(n), by_row(rows);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < n; ++c)
            if (m.get(r, c)) {
                by_col[c].push_back(r + 1);
                by_row[r].push_back(c + 1);
            }
    std::size_t maxc = 0, maxr = 0;
    for (const auto& v : by_col) maxc = std::max(maxc, v.size());
    for (const auto& v : by_row) maxr = std::max(maxr, v.size());
    auto join = [](const std::vector<std::size_t>& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) s += ' ';
            s += std::to_string(v[i]);
        }
        return s;
    };
    std::ostringstream out;
    out << n << ' ' << rows << '\n';
    out << maxc << ' ' << maxr << '\n';
    std::vector<std::size_t> cd, rd;
    for (const auto& v : by_col) cd.push_back(v.size());
    for (const auto& v : by_row) rd.push_back(v.size());
    out << join(cd) << '\n' << join(rd) << '\n';
    for (std::size_t c = 0; c < n; ++c) out << join(by_col[c]) << '\n';
    for (std::size_t r = 0; r < rows; ++r) out << join(by_row[r]) << '\n';
    return out.str();
}

f2::BitMatrix import_alist(const std::string& text) {
    std::istringstream in(text);
    long long n = 0, rows = 0, maxc = 0, maxr = 0;
    if (!(in >> n >> rows >> maxc >> maxr) || n < 0 || rows < 0)
        throw FormatError("alist: bad header");
    std::vector<long long> cdeg(static_cast<std::size_t>(n));
    std::vector<long long> rdeg(static_cast<std::size_t>(rows));
    for (auto& x : cdeg)
        if (!(in >> x)) throw FormatError("alist: truncated column degrees");
    for (auto& x : rdeg)
        if (!(in >> x)) throw FormatError("alist: truncated row degrees");
    f2::BitMatrix m(static_cast<std::size_t>(rows), static_cast<std::size_t>(n));
    for (std::size_t c = 0; c < static_cast<std::size_t>(n); ++c) {
        for (long long i = 0; i < cdeg[c]; ++i) {
            long long r;
            if (!(in >> r) || r < 1 || r > rows) throw FormatError("alist: bad row index");
            m.set(std::size_t(r - 1), c, true);
        }
    }
    // row lists are redundant; verify when present
    for (std::size_t r = 0; r < static_cast<std::size_t>(rows); ++r) {
        for (long long i = 0; i < rdeg[r]; ++i) {
            long long c;
            if (!(in >> c)) return m; // tolerated: column lists already read
            if (c < 1 || c > n || !m.get(r, std::size_t(c - 1)))
                throw FormatError("alist: row list disagrees with column lists");
        }
    }
    return m;
}

std::string export_matrixmarket(const f2::BitMatrix& m) {
    std::ostringstream out;
    out << "%%MatrixMarket matrix coordinate pattern general\n";
    std::size_t nnz = 0;
    for (std::size_t r = 0; r < m.rows(); ++r) nnz += m.row_weight(r);
    out << m.rows() << ' ' << m.cols() << ' ' << nnz << '\n';
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            if (m.get(r, c)) out << (r + 1) << ' ' << (c + 1) << '\n';
    return out.str();
}

f2::BitMatrix import_matrixmarket(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line.rfind("%%MatrixMarket", 0) != 0)
        throw FormatError("matrixmarket: missing banner");
    if (line.find("pattern") == std::string::npos)
        throw FormatError("matrixmarket: expected a pattern matrix");
    while (std::getline(in, line)) {
        if (!line.empty() && line[0] != '%') break;
    }
    std::istringstream hdr(line);
    long long rows, cols, nnz;
    if (!(hdr >> rows >> cols >> nnz)) throw FormatError("matrixmarket: bad size line");
    f2::BitMatrix m(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
    for (long long i = 0; i < nnz; ++i) {
        long long r, c;
        if (!(in >> r >> c)) throw FormatError("matrixmarket: truncated entries");
        if (r < 1 || r > rows || c < 1 || c > cols)
            throw FormatError("matrixmarket: entry out of range");
        m.set(std::size_t(r - 1), std::size_t(c - 1), true);
    }
    return m;
}

namespace {

nlohmann::ordered_json matrix_json(const f2::BitMatrix& m) {
    nlohmann::ordered_json j;
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    auto rows = nlohmann::ordered_json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        auto row = nlohmann::ordered_json::array();
        for (std::size_t c = 0; c < m.cols(); ++c)
            if (m.get(r, c)) row.push_back(c);
        rows.push_back(row);
    }
    j["row_support"] = rows;
    return j;
}

f2::BitMatrix matrix_from_json(const nlohmann::json& j) {
    f2::BitMatrix m(j.at("rows").get<std::size_t>(), j.at("cols").get<std::size_t>());
    std::size_t r = 0;
    for (const auto& row : j.at("row_support")) {
        for (const auto& c : row) m.set(r, c.get<std::size_t>(), true);
        ++r;
    }
    return m;
}

} // namespace

std::string export_json(const CssCode& code) {
    nlohmann::ordered_json j;
    j["n"] = code.n;
    j["h_x"] = matrix_json(code.h_x);
    j["h_z"] = matrix_json(code.h_z);
    nlohmann::ordered_json prov;
    prov["source"] = code.provenance.source;
    prov["i0"] = code.provenance.i0;
    prov["reduced"] = code.provenance.reduced;
    prov["basis"] = code.provenance.basis;
    if (code.provenance.family_l) prov["l"] = *code.provenance.family_l;
    if (code.provenance.family_r) prov["r"] = *code.provenance.family_r;
    j["provenance"] = prov;
    return j.dump(2) + "\n";
}

CssCode import_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("css json: ") + e.what());
    }
    CssCode code;
    code.n = j.at("n").get<std::size_t>();
    code.h_x = matrix_from_json(j.at("h_x"));
    code.h_z = matrix_from_json(j.at("h_z"));
    const auto& prov = j.at("provenance");
    code.provenance.source = prov.value("source", "");
    code.provenance.i0 = prov.value("i0", 0);
    code.provenance.reduced = prov.value("reduced", true);
    code.provenance.basis = prov.value("basis", "pm");
    if (prov.contains("l")) code.provenance.family_l = prov["l"].get<uint32_t>();
    if (prov.contains("r")) code.provenance.family_r = prov["r"].get<uint32_t>();
    code.check();
    return code;
}

std::vector<std::pair<std::string, std::string>> export_code(const CssCode& code,
                                                             const std::string& format) {
    std::vector<std::pair<std::string, std::string>> out;
    if (format == "alist") {
        out.emplace_back("hx.alist", export_alist(code.h_x));
        out.emplace_back("hz.alist", export_alist(code.h_z));
    } else if (format == "matrixmarket") {
        out.emplace_back("hx.mtx", export_matrixmarket(code.h_x));
        out.emplace_back("hz.mtx", export_matrixmarket(code.h_z));
    } else if (format == "json") {
        out.emplace_back("css.json", export_json(code));
    } else {
        throw PreconditionError("unsupported export format: " + format);
    }
    return out;
}

} // namespace khovcss::css
