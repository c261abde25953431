#pragma once

#include "khovcss/diagram.hpp"

#include <random>
#include <utility>
#include <vector>

namespace khovcss::rmoves {

/// Closure of a braid word on `strands` strands. Letters are +-(i+1) for the
/// generator on strands (i, i+1). Strand 0 carries the mark when it meets a
/// crossing; otherwise the closure of strand 0 is a marked free circle.
PlanarDiagram braid_closure(const std::vector<int>& word, uint32_t strands);

/// Random pointed diagram as a braid closure (every diagram so produced is a
/// genuine link diagram).
PlanarDiagram random_braid_diagram(std::mt19937_64& rng, uint32_t max_strands,
                                   uint32_t max_crossings);

/// Insert a kink on `edge`; `shifting` selects the kink whose 1-smoothing
/// frees the loop (the one that shifts homology up by one).
PlanarDiagram r1_move(const PlanarDiagram& d, uint32_t edge, bool shifting);

/// Slide edge `e` across edge `f` (two new crossings; homology shifts by one).
PlanarDiagram r2_move(const PlanarDiagram& d, uint32_t e, uint32_t f);

/// A pair of braid closures differing by one braid relation (third move;
/// no homology shift).
std::pair<PlanarDiagram, PlanarDiagram> r3_pair(std::mt19937_64& rng);

} // namespace khovcss::rmoves
