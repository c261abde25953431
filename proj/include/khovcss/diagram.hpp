#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace khovcss {

/// Combinatorial link diagram. Each crossing is a counterclockwise 4-tuple of
/// edge identifiers with slot 0 on the under-strand; edge identifiers are
/// dense in [0, n_edges). Closed components without crossings are carried as
/// a free-circle count. A diagram is pointed when it has a marked edge or a
/// marked free circle (the first one).
struct PlanarDiagram {
    std::vector<std::array<uint32_t, 4>> crossings;
    uint32_t n_edges = 0;
    uint32_t free_circles = 0;
    std::optional<uint32_t> marked_edge;
    bool marked_free_circle = false;

    std::size_t n_crossings() const { return crossings.size(); }
    bool pointed() const { return marked_edge.has_value() || marked_free_circle; }

    /// Throws StructuralError unless every edge id < n_edges appears in
    /// exactly two slots and the marked edge (if any) exists.
    void validate() const;

    /// Canonical form: each crossing tuple replaced by the smaller of its two
    /// half-turn rotations (both describe the same smoothing structure).
    PlanarDiagram normalized() const;
    bool operator==(const PlanarDiagram& o) const;

    std::string to_json() const;
    static PlanarDiagram from_json(const std::string& text);
};

/// Circles of one resolution. Edge circles are indexed first, ordered by
/// their smallest edge; free circles follow in ordinal order.
struct Resolution {
    uint64_t bits = 0;                   // bit c = smoothing of crossing c
    std::vector<int32_t> circle_of_edge; // edge -> circle index
    uint32_t n_edge_circles = 0;
    uint32_t n_free = 0;
    std::vector<uint32_t> min_edge;      // per edge circle
    int32_t dotted = -1;                 // circle containing the mark, -1 if unpointed

    uint32_t n_circles() const { return n_edge_circles + n_free; }
    std::vector<std::vector<uint32_t>> circles_as_edge_lists() const;
};

/// Smoothing convention: 0 joins slots (0,1) and (2,3); 1 joins (0,3) and (1,2).
Resolution trace_circles(const PlanarDiagram& d, uint64_t bits);

/// Pointed unknot diagram with 2l crossings: l kinks whose 1-smoothing frees
/// the loop, then l kinks whose 0-smoothing does. Built by connected sums of
/// single-kink diagrams.
PlanarDiagram gen_unknot(uint32_t l);

/// Pointed (l+1)-component unlink: l-fold connected sum of the two-crossing
/// clasp diagram.
PlanarDiagram gen_unlink(uint32_t l);

/// Pointed (2,l)-torus link: closure of the two-strand braid with l equal
/// crossings. All-0 resolution has 2 circles; k >= 1 ones give k circles.
PlanarDiagram gen_torus(uint32_t l);

/// The two-crossing clasp diagram of the 2-component unlink (= gen_unlink(1)).
PlanarDiagram clasp();
/// Single-kink unknot diagrams (building blocks of gen_unknot).
PlanarDiagram kink_split();   // 1-smoothing frees the loop
PlanarDiagram kink_join();    // 0-smoothing frees the loop
/// a kinks of the first kind followed by b of the second, as connected sums.
PlanarDiagram gen_kink_chain(uint32_t a, uint32_t b);
/// Zero-crossing pointed circle (identity for connected sum).
PlanarDiagram pointed_circle();

/// Swap over/under strand at every crossing (rotates each tuple by one).
PlanarDiagram mirror(const PlanarDiagram& d);

/// Splice the two marked edges; result is pointed on the spliced edge and has
/// n1+n2 crossings. Connected-summing with a pointed free circle is the
/// identity.
PlanarDiagram connected_sum(const PlanarDiagram& d1, const PlanarDiagram& d2);

/// Side-by-side union; edges of d2 shifted; mark kept from d1.
PlanarDiagram disjoint_union(const PlanarDiagram& d1, const PlanarDiagram& d2);

/// Smooth crossing c with the given bit, dropping it from the diagram.
/// Fused edges take the smallest id of their class (then renumbered densely,
/// order preserving); a fused class no longer meeting any crossing becomes a
/// free circle.
PlanarDiagram resolve_crossing(const PlanarDiagram& d, std::size_t c, int bit);

} // namespace khovcss
