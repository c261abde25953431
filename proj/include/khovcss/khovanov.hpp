#pragma once

#include "khovcss/diagram.hpp"
#include "khovcss/homalg.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace khovcss::kh {

/// Generator label alphabets. In the sign basis a merge XORs the labels and a
/// split emits the two labelings whose XOR complements the source; codes are
/// read off in this basis. The polynomial basis follows the algebra
/// F2[X]/X^2 directly.
enum class LabelBasis { pm, one_x };

/// Label bit 0 encodes -, 1 encodes + (resp. 1 and X).
struct EnhancedState {
    uint32_t bits = 0;   // semantic: bit c = smoothing of crossing c
    uint32_t labels = 0; // semantic: bit p = label of the p-th labeled circle

    friend bool operator<(const EnhancedState& a, const EnhancedState& b) {
        return a.bits != b.bits ? a.bits < b.bits : a.labels < b.labels;
    }
    friend bool operator==(const EnhancedState& a, const EnhancedState& b) {
        return a.bits == b.bits && a.labels == b.labels;
    }
};

/// Reverse the low `width` bits (maps enumeration keys to semantic masks;
/// generators are ordered lexicographically reading crossing 0 / circle 0
/// first, with 0 before 1).
uint32_t bit_reverse(uint32_t x, uint32_t width);

struct ResolutionEntry {
    uint32_t bits = 0;
    Resolution res;
    std::vector<int32_t> label_pos;      // circle index -> label position, -1 dotted
    std::vector<uint32_t> labeled_circle; // label position -> circle index
    std::size_t offset = 0;              // first state index within the degree
    uint32_t n_labeled() const { return uint32_t(labeled_circle.size()); }
};

struct DegreeBasis {
    std::vector<ResolutionEntry> entries; // enumeration order
    std::size_t total = 0;
    const ResolutionEntry* find(uint32_t bits, uint32_t n_crossings) const;
};

struct Complex {
    PlanarDiagram diagram;
    bool reduced = true;
    LabelBasis basis = LabelBasis::pm;
    homalg::ChainComplex cx;
    std::vector<DegreeBasis> degrees;

    std::size_t state_index(int degree, const EnhancedState& s) const;
    EnhancedState state_at(int degree, std::size_t index) const;
};

struct BuildOptions {
    std::size_t max_states_per_degree = std::size_t(1) << 26;
};

/// Per-degree chain group dimensions without assembling differentials.
std::vector<std::size_t> chain_dims(const PlanarDiagram& d, bool reduced,
                                    const BuildOptions& opts = {});

/// Assemble the complex; rows of each differential are filled independently
/// (preimage rules) and in parallel. Identical to the reference build.
Complex build_complex(const PlanarDiagram& d, bool reduced,
                      LabelBasis basis = LabelBasis::pm, const BuildOptions& opts = {});

/// Straightforward serial build applying the forward labelling rules
/// generator by generator; reference for testing.
Complex build_complex_reference(const PlanarDiagram& d, bool reduced,
                                LabelBasis basis = LabelBasis::pm,
                                const BuildOptions& opts = {});

/// Conjugate a one_x-basis complex into the sign basis; exact inverse pair
/// with the direct pm build.
Complex change_basis_to_pm(const Complex& c);

/// Per degree, unreduced homology rank must be twice the reduced one.
bool unreduced_splitting_check(const PlanarDiagram& d);

/// The generator bijection (complement every smoothing, swap every label)
/// must carry each differential of D to the transpose of the complementary
/// differential of the mirror. Sign basis.
bool mirror_duality_check(const PlanarDiagram& d, bool reduced);

/// The complex of a connected sum must match the tensor product of the
/// factors' complexes bit-exactly under the canonical state bijection.
bool connected_sum_matches_tensor(const PlanarDiagram& d1, const PlanarDiagram& d2,
                                  bool reduced, LabelBasis basis = LabelBasis::pm);

/// The complex of D must match the cone of the crossing map
/// C(D_c=0) -> C(D_c=1) under the state bijection.
bool crossing_cone_check(const PlanarDiagram& d, std::size_t crossing, bool reduced,
                         LabelBasis basis = LabelBasis::pm);

/// XOR-set of enhanced states, sorted, all of one homological degree.
using SparseChain = std::vector<EnhancedState>;

/// Apply the differential to a sparse chain without building matrices.
SparseChain apply_differential(const PlanarDiagram& d, bool reduced, LabelBasis basis,
                               const SparseChain& chain);

/// Row/column weight profile of the matrix of the differential out of
/// `degree`, computed per resolution (sign basis only: weights there do not
/// depend on the labels). Row weights are target-side stabilizer weights,
/// column weights source-side generator degrees.
struct WeightHist {
    std::map<std::size_t, std::size_t> counts;
    std::size_t min_w = 0, max_w = 0, entries = 0;
    void add(std::size_t w, std::size_t multiplicity);
};
WeightHist map_row_weights(const PlanarDiagram& d, bool reduced, int degree);
WeightHist map_col_weights(const PlanarDiagram& d, bool reduced, int degree);

} // namespace khovcss::kh
