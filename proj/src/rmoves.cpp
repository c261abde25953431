#include "khovcss/rmoves.hpp"

#include "khovcss/errors.hpp"

#include <algorithm>
#include <map>

namespace khovcss::rmoves {

PlanarDiagram braid_closure(const std::vector<int>& word, uint32_t strands) {
    if (strands < 2) throw PreconditionError("braid closure needs at least 2 strands");
    std::vector<uint32_t> cur(strands);
    for (uint32_t i = 0; i < strands; ++i) cur[i] = i;
    uint32_t next = strands;
    PlanarDiagram d;
    for (int w : word) {
        uint32_t i = uint32_t(std::abs(w)) - 1;
        if (w == 0 || i + 1 >= strands) throw PreconditionError("braid letter out of range");
        uint32_t a = cur[i], b = cur[i + 1];
        uint32_t u = next++, v = next++;
        if (w > 0)
            d.crossings.push_back({a, u, v, b});
        else
            d.crossings.push_back({u, v, b, a});
        cur[i] = u;
        cur[i + 1] = v;
    }
    // close up: the outgoing edge of each used strand is its incoming edge
    for (uint32_t i = 0; i < strands; ++i) {
        if (cur[i] == i) {
            ++d.free_circles; // untouched strand closes into a circle
            continue;
        }
        for (auto& c : d.crossings)
            for (auto& e : c)
                if (e == cur[i]) e = i;
    }
    // renumber densely, order preserving
    std::map<uint32_t, uint32_t> ren;
    for (const auto& c : d.crossings)
        for (uint32_t e : c) ren.emplace(e, 0);
    uint32_t id = 0;
    for (auto& [e, v] : ren) v = id++;
    for (auto& c : d.crossings)
        for (auto& e : c) e = ren.at(e);
    d.n_edges = id;
    if (ren.count(0))
        d.marked_edge = ren.at(0);
    else
        d.marked_free_circle = d.free_circles > 0;
    d.validate();
    return d;
}

PlanarDiagram random_braid_diagram(std::mt19937_64& rng, uint32_t max_strands,
                                   uint32_t max_crossings) {
    std::uniform_int_distribution<uint32_t> strands_d(2, max_strands);
    uint32_t strands = strands_d(rng);
    std::uniform_int_distribution<uint32_t> len_d(1, max_crossings);
    uint32_t len = len_d(rng);
    std::uniform_int_distribution<uint32_t> gen_d(1, strands - 1);
    std::vector<int> word;
    for (uint32_t i = 0; i < len; ++i) {
        int g = int(gen_d(rng));
        word.push_back((rng() & 1) ? g : -g);
    }
    return braid_closure(word, strands);
}

namespace {

// replace the second slot holding `edge` with `repl`
void split_edge_slots(PlanarDiagram& d, uint32_t edge, uint32_t repl) {
    int seen = 0;
    for (auto& c : d.crossings) {
        for (auto& e : c) {
            if (e == edge && seen++ == 1) {
                e = repl;
                return;
            }
        }
    }
    throw PreconditionError("edge does not have two crossing slots");
}

} // namespace

PlanarDiagram r1_move(const PlanarDiagram& d, uint32_t edge, bool shifting) {
    d.validate();
    if (edge >= d.n_edges) throw PreconditionError("r1_move: no such edge");
    PlanarDiagram out = d;
    uint32_t t = out.n_edges, u = out.n_edges + 1;
    out.n_edges += 2;
    split_edge_slots(out, edge, u);
    if (shifting)
        out.crossings.push_back({edge, t, t, u});
    else
        out.crossings.push_back({t, t, edge, u});
    out.validate();
    return out;
}

PlanarDiagram r2_move(const PlanarDiagram& d, uint32_t e, uint32_t f) {
    d.validate();
    if (e == f || e >= d.n_edges || f >= d.n_edges)
        throw PreconditionError("r2_move: need two distinct edges");
    PlanarDiagram out = d;
    uint32_t ma = out.n_edges, mb = out.n_edges + 1;
    uint32_t ua = out.n_edges + 2, ub = out.n_edges + 3;
    out.n_edges += 4;
    split_edge_slots(out, e, ua);
    split_edge_slots(out, f, ub);
    out.crossings.push_back({e, ma, mb, f});
    out.crossings.push_back({ma, mb, ub, ua});
    out.validate();
    return out;
}

std::pair<PlanarDiagram, PlanarDiagram> r3_pair(std::mt19937_64& rng) {
    std::uniform_int_distribution<uint32_t> strands_d(3, 4);
    uint32_t strands = strands_d(rng);
    std::uniform_int_distribution<uint32_t> len_d(0, 2);
    std::uniform_int_distribution<uint32_t> gen_d(1, strands - 1);
    auto rand_word = [&](uint32_t len) {
        std::vector<int> w;
        for (uint32_t i = 0; i < len; ++i) {
            int g = int(gen_d(rng));
            w.push_back((rng() & 1) ? g : -g);
        }
        return w;
    };
    std::vector<int> w1 = rand_word(len_d(rng));
    std::vector<int> w2 = rand_word(len_d(rng));
    std::uniform_int_distribution<uint32_t> i_d(1, strands - 2);
    int i = int(i_d(rng));
    std::vector<int> a = w1, b = w1;
    a.insert(a.end(), {i, i + 1, i});
    b.insert(b.end(), {i + 1, i, i + 1});
    a.insert(a.end(), w2.begin(), w2.end());
    b.insert(b.end(), w2.begin(), w2.end());
    return {braid_closure(a, strands), braid_closure(b, strands)};
}

} // namespace khovcss::rmoves
