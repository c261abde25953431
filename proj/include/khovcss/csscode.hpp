#pragma once

#include "khovcss/homalg.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace khovcss::css {

struct Provenance {
    std::string source;   // e.g. "torus l=5", "file:..."
    int i0 = 0;
    bool reduced = true;
    std::string basis = "pm";
    std::optional<uint32_t> family_l;
    std::optional<uint32_t> family_r;
};

/// CSS code from a pair of parity-check matrices over F2 with equal column
/// counts and H_X H_Z^t = 0.
struct CssCode {
    f2::BitMatrix h_x;
    f2::BitMatrix h_z;
    std::size_t n = 0;
    Provenance provenance;

    /// H_X H_Z^t = 0 and column counts agree; throws IntegrityError.
    void check() const;
};

struct DistanceValue {
    bool exact = false;
    bool infinite = false;     // no logical operator on this side
    uint64_t upper = 0;        // best weight found
    uint64_t lower = 1;        // certified lower bound
    std::string method;

    std::string to_string() const;
};

struct CodeParams {
    std::size_t n = 0;
    std::size_t k = 0;
    DistanceValue d;   // min of the two sides
    DistanceValue d_x; // min weight in ker H_Z \ rowspace H_X
    DistanceValue d_z; // min weight in ker H_X \ rowspace H_Z

    std::string to_string() const; // "[[n;k;d]] exact|bounds"
};

struct DistanceOptions {
    bool exact = true;          // certified search; false = stop at wmax
    uint32_t enum_budget = 24;
    uint32_t wmax = 6;
    uint64_t max_work = uint64_t(1) << 33;

    f2::MinWeightOptions to_f2() const {
        f2::MinWeightOptions o;
        o.enum_budget = enum_budget;
        o.wmax = wmax;
        o.bounded = !exact;
        o.max_work = max_work;
        return o;
    }
};

/// Slice C^{i0-1} -> C^{i0} -> C^{i0+1}: H_X is the outgoing differential,
/// H_Z the transpose of the incoming one; missing outer groups give matrices
/// with zero rows. Throws on an empty middle group.
CssCode from_complex_slice(const homalg::ChainComplex& c, int i0, Provenance prov = {});

CodeParams params(const CssCode& code, const DistanceOptions& opts = {});

struct WeightReport {
    std::map<std::size_t, std::size_t> hx_rows, hx_cols, hz_rows, hz_cols;
    std::optional<bool> family_bound_ok; // set when provenance names a family
    std::string family_bound_desc;
};

/// Row/column weight histograms plus the family-specific degree check when
/// the provenance identifies one of the generated families. For the torus
/// family the constant degrees sit on the qubit (column) side.
WeightReport sparseness_audit(const CssCode& code);

// --- file formats ------------------------------------------------------

/// Sparse parity-check layout: "n m", "maxcol maxrow", column degrees, row
/// degrees, per-column 1-based row indices, per-row 1-based column indices.
std::string export_alist(const f2::BitMatrix& m);
f2::BitMatrix import_alist(const std::string& text);

/// MatrixMarket coordinate pattern.
std::string export_matrixmarket(const f2::BitMatrix& m);
f2::BitMatrix import_matrixmarket(const std::string& text);

std::string export_json(const CssCode& code);
CssCode import_json(const std::string& text);

/// Filename suffix -> payload for the chosen format ("alist", "matrixmarket",
/// "json").
std::vector<std::pair<std::string, std::string>> export_code(const CssCode& code,
                                                             const std::string& format);

} // namespace khovcss::css
