#pragma once

#include "khovcss/csscode.hpp"
#include "khovcss/khovanov.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace khovcss::families {

enum class Family { unknot, unlink, torus };

std::string family_name(Family f);
std::optional<Family> family_from_name(const std::string& s);

/// unknot/unlink codes slice at i0 = l; torus codes need 2 <= r <= l and
/// slice at i0 = r.
struct FamilySpec {
    Family family = Family::torus;
    uint32_t l = 1;
    uint32_t r = 0;

    void validate() const;
    int i0() const;
};

PlanarDiagram build_diagram(const FamilySpec& s);

struct ExpectedParams {
    mpz_class n, k, d, d_x, d_z;
};

/// Closed-form parameters, exact in arbitrary precision.
ExpectedParams expected_params(const FamilySpec& s);

/// Per-degree chain group dimension from the closed forms (exact).
mpz_class expected_chain_dim(Family f, uint32_t l, uint32_t degree);

// --- torus witness codewords -------------------------------------------

/// Explicit degree-r cycle of weight C(l,r) built from the sign vector eps
/// (one entry per plain circle of the all-1 resolution). One enhanced state
/// per degree-r resolution.
kh::SparseChain torus_witness(uint32_t l, uint32_t r, const std::vector<bool>& eps_plus);

struct WitnessCheck {
    bool weight_ok = false;
    bool cycle_ok = false;
    bool nonboundary_certified = false; // parity certificate over one resolution
    bool dense_checked = false;         // linear-algebra cross-check ran
    bool dense_ok = false;
    uint64_t weight = 0;
};

/// Verifies weight, that the witness is a cycle (sparse differential), and
/// that it is no boundary: all flips into its lexicographically first
/// resolution must split circles, so boundaries hit that resolution an even
/// number of times while the witness hits it once. A dense rowspace check
/// cross-validates when the neighbouring chain group is small.
WitnessCheck check_torus_witness(uint32_t l, uint32_t r, const std::vector<bool>& eps_plus,
                                 std::size_t dense_limit = 2048);

// --- subfamily constants -------------------------------------------------

struct SubfamilyConstants {
    double alpha0 = 0, beta0 = 0, gamma0 = 0;
    // delta0 is the exact rational 261/100 used in integer comparisons
};

/// alpha0 by bisection of x ln(2x) + (1-x) ln(1-x) on (0,1); beta0 and
/// gamma0 by their defining formulas. precision >= 1e-12 required (doubles).
SubfamilyConstants subfamily_constants(double precision = 1e-14);

/// round-half-up of alpha0*l - beta0*ln(l) + gamma0.
uint32_t r_of_l(uint32_t l);
/// r_l - (alpha0*l - beta0*ln(l) + gamma0), in [-1/2, 1/2].
double subfamily_eps(uint32_t l);

// --- family verification -------------------------------------------------

struct InstanceReport {
    FamilySpec spec;
    bool pass = false;
    bool exact = false;
    std::string n_expected, k_expected, d_expected;
    std::size_t n_computed = 0, k_computed = 0;
    css::DistanceValue d_computed, dx_computed, dz_computed;
    bool dims_ok = false, k_ok = false, d_ok = false;
    bool witness_ok = true;        // torus only
    bool mirror_distance_ok = true; // torus only
    bool sparseness_ok = true;
    std::vector<std::string> notes;

    std::string to_json() const;
};

struct VerifyOptions {
    css::DistanceOptions distance;
    bool check_witnesses = true;     // torus
    bool check_mirror = true;        // torus
    bool check_sparseness = true;
    uint32_t witness_eps_samples = 1;
    uint64_t rng_seed = 20240901;
};

InstanceReport verify_instance(const FamilySpec& s, const VerifyOptions& opts = {});
std::vector<InstanceReport> verify_family(Family f, uint32_t l_min, uint32_t l_max,
                                          const VerifyOptions& opts = {});

/// Row-weight interval check for the kink/clasp families and constant
/// column-degree check for the torus family, streamed per resolution.
bool sparseness_check(const FamilySpec& s);

// --- kink-ladder weight relations ----------------------------------------

/// One verified step along the kink chain: appending a degree-shifting kink
/// keeps the minimal homology weight, appending the other kind doubles it.
struct KinkStep {
    uint32_t a = 0, b = 0;   // kink counts after the step
    char move = '?';         // 'A' = shifting kink, 'B' = doubling kink
    int degree = 0;          // homology degree after the step
    uint64_t d_value = 0;    // exact minimal homology weight after the step
    bool relation_ok = false;
    bool exact = false;
    std::string method;      // "search", "search+factor", "factor"
    bool factorization_checked = false; // tensor decomposition verified bit-exact
};

/// Walk U(0,0) -> U(1,0) -> U(1,1) -> ... -> U(lmax,lmax), verifying the two
/// weight relations with exact values at every step. Values come from
/// certified search where the search is affordable; otherwise from the
/// bit-exact tensor factorization of the step (the product complex with a
/// two-object factor doubles or shifts minimal weights), cross-checked
/// against search wherever both ran.
std::vector<KinkStep> kink_weight_ladder(uint32_t lmax, uint64_t search_work_cap = uint64_t(1) << 31);

} // namespace khovcss::families
