#include "khovcss/diagram.hpp"

#include "khovcss/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>
#include <numeric>

namespace khovcss {

namespace {

std::array<uint32_t, 4> rot2(const std::array<uint32_t, 4>& t) {
    return {t[2], t[3], t[0], t[1]};
}

struct UnionFind {
    std::vector<uint32_t> p;
    explicit UnionFind(uint32_t n) : p(n) { std::iota(p.begin(), p.end(), 0u); }
    uint32_t find(uint32_t x) {
        while (p[x] != x) {
            p[x] = p[p[x]];
            x = p[x];
        }
        return x;
    }
    void unite(uint32_t a, uint32_t b) {
        a = find(a);
        b = find(b);
        if (a != b) p[std::max(a, b)] = std::min(a, b);
    }
};

} // namespace

void PlanarDiagram::validate() const {
    std::vector<uint32_t> deg(n_edges, 0);
    for (const auto& c : crossings) {
        for (uint32_t e : c) {
            if (e >= n_edges) throw StructuralError("crossing references unknown edge");
            ++deg[e];
        }
    }
    for (uint32_t e = 0; e < n_edges; ++e) {
        if (deg[e] != 2) {
            throw StructuralError("edge " + std::to_string(e) + " appears in " +
                                  std::to_string(deg[e]) + " slots, want 2");
        }
    }
    if (marked_edge && *marked_edge >= n_edges)
        throw StructuralError("marked edge does not exist");
    if (marked_free_circle && free_circles == 0)
        throw StructuralError("marked free circle without free circles");
    if (marked_edge && marked_free_circle)
        throw StructuralError("two marked components");
    if (n_crossings() > 0 && n_edges == 0) throw StructuralError("crossings without edges");
}

PlanarDiagram PlanarDiagram::normalized() const {
    PlanarDiagram d = *this;
    for (auto& c : d.crossings) {
        auto r = rot2(c);
        if (std::lexicographical_compare(r.begin(), r.end(), c.begin(), c.end())) c = r;
    }
    return d;
}

bool PlanarDiagram::operator==(const PlanarDiagram& o) const {
    PlanarDiagram a = normalized(), b = o.normalized();
    return a.crossings == b.crossings && a.n_edges == b.n_edges &&
           a.free_circles == b.free_circles && a.marked_edge == b.marked_edge &&
           a.marked_free_circle == b.marked_free_circle;
}

std::string PlanarDiagram::to_json() const {
    nlohmann::ordered_json j;
    j["crossings"] = nlohmann::ordered_json::array();
    for (const auto& c : crossings) j["crossings"].push_back({c[0], c[1], c[2], c[3]});
    j["free_circles"] = free_circles;
    if (marked_edge)
        j["marked_edge"] = *marked_edge;
    else
        j["marked_edge"] = nullptr;
    if (marked_free_circle) j["marked_free_circle"] = true;
    return j.dump();
}

PlanarDiagram PlanarDiagram::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("diagram json: ") + e.what());
    }
    PlanarDiagram d;
    if (!j.contains("crossings") || !j["crossings"].is_array())
        throw FormatError("diagram json: missing crossings array");
    uint32_t max_edge = 0;
    bool any = false;
    for (const auto& c : j["crossings"]) {
        if (!c.is_array() || c.size() != 4) throw FormatError("crossing must be a 4-tuple");
        std::array<uint32_t, 4> t{};
        for (int k = 0; k < 4; ++k) {
            t[std::size_t(k)] = c[std::size_t(k)].get<uint32_t>();
            max_edge = std::max(max_edge, t[std::size_t(k)]);
            any = true;
        }
        d.crossings.push_back(t);
    }
    d.n_edges = any ? max_edge + 1 : 0;
    d.free_circles = j.value("free_circles", 0u);
    if (j.contains("marked_edge") && !j["marked_edge"].is_null())
        d.marked_edge = j["marked_edge"].get<uint32_t>();
    d.marked_free_circle = j.value("marked_free_circle", false);
    d.validate();
    return d;
}

std::vector<std::vector<uint32_t>> Resolution::circles_as_edge_lists() const {
    std::vector<std::vector<uint32_t>> out(n_edge_circles);
    for (uint32_t e = 0; e < circle_of_edge.size(); ++e)
        out[std::size_t(circle_of_edge[e])].push_back(e);
    return out;
}

Resolution trace_circles(const PlanarDiagram& d, uint64_t bits) {
    d.validate();
    Resolution r;
    r.bits = bits;
    r.n_free = d.free_circles;
    UnionFind uf(d.n_edges);
    for (std::size_t c = 0; c < d.crossings.size(); ++c) {
        const auto& t = d.crossings[c];
        if ((bits >> c) & 1) {
            uf.unite(t[0], t[3]);
            uf.unite(t[1], t[2]);
        } else {
            uf.unite(t[0], t[1]);
            uf.unite(t[2], t[3]);
        }
    }
    // roots in ascending order are exactly the smallest edges of each circle
    std::vector<int32_t> idx_of_root(d.n_edges, -1);
    r.circle_of_edge.assign(d.n_edges, -1);
    for (uint32_t e = 0; e < d.n_edges; ++e) {
        uint32_t root = uf.find(e);
        if (idx_of_root[root] < 0) {
            idx_of_root[root] = int32_t(r.n_edge_circles++);
            r.min_edge.push_back(root);
        }
        r.circle_of_edge[e] = idx_of_root[root];
    }
    if (d.marked_edge)
        r.dotted = r.circle_of_edge[*d.marked_edge];
    else if (d.marked_free_circle)
        r.dotted = int32_t(r.n_edge_circles); // first free circle
    return r;
}

PlanarDiagram clasp() {
    PlanarDiagram d;
    d.crossings = {{0, 1, 2, 3}, {0, 3, 2, 1}};
    d.n_edges = 4;
    d.marked_edge = 0;
    return d;
}

PlanarDiagram kink_split() {
    PlanarDiagram d;
    d.crossings = {{0, 1, 1, 0}};
    d.n_edges = 2;
    d.marked_edge = 0;
    return d;
}

PlanarDiagram kink_join() {
    PlanarDiagram d;
    d.crossings = {{1, 1, 0, 0}};
    d.n_edges = 2;
    d.marked_edge = 0;
    return d;
}

PlanarDiagram pointed_circle() {
    PlanarDiagram d;
    d.free_circles = 1;
    d.marked_free_circle = true;
    return d;
}

PlanarDiagram gen_kink_chain(uint32_t a, uint32_t b) {
    PlanarDiagram d = pointed_circle();
    for (uint32_t i = 0; i < a; ++i) d = connected_sum(d, kink_split());
    for (uint32_t i = 0; i < b; ++i) d = connected_sum(d, kink_join());
    return d;
}

PlanarDiagram gen_unknot(uint32_t l) {
    if (l == 0) throw PreconditionError("gen_unknot: l must be >= 1");
    return gen_kink_chain(l, l);
}

PlanarDiagram gen_unlink(uint32_t l) {
    if (l == 0) throw PreconditionError("gen_unlink: l must be >= 1");
    PlanarDiagram d = clasp();
    for (uint32_t i = 1; i < l; ++i) d = connected_sum(d, clasp());
    return d;
}

PlanarDiagram gen_torus(uint32_t l) {
    if (l == 0) throw PreconditionError("gen_torus: l must be >= 1");
    PlanarDiagram d;
    d.n_edges = 2 * l;
    for (uint32_t i = 0; i < l; ++i) {
        uint32_t an = (i + 1) % l, bn = l + (i + 1) % l;
        d.crossings.push_back({i, an, bn, l + i});
    }
    d.marked_edge = 0;
    d.validate();
    return d;
}

PlanarDiagram mirror(const PlanarDiagram& d) {
    PlanarDiagram m = d;
    for (auto& c : m.crossings) c = {c[1], c[2], c[3], c[0]};
    return m;
}

namespace {

PlanarDiagram renumber_dense(PlanarDiagram d) {
    std::map<uint32_t, uint32_t> ren;
    for (const auto& c : d.crossings)
        for (uint32_t e : c) ren.emplace(e, 0);
    uint32_t next = 0;
    for (auto& [e, v] : ren) v = next++;
    for (auto& c : d.crossings)
        for (auto& e : c) e = ren.at(e);
    if (d.marked_edge) d.marked_edge = ren.at(*d.marked_edge);
    d.n_edges = next;
    return d;
}

} // namespace

PlanarDiagram connected_sum(const PlanarDiagram& d1, const PlanarDiagram& d2) {
    d1.validate();
    d2.validate();
    if (!d1.pointed() || !d2.pointed())
        throw PreconditionError("connected_sum: both diagrams must be pointed");

    // A marked free circle is absorbed into the other diagram's marked
    // component; it contributes its crossings (none on that circle) and the
    // rest of its free circles.
    if (d2.marked_free_circle) {
        PlanarDiagram out = d1;
        PlanarDiagram shifted = d2;
        for (auto& c : shifted.crossings)
            for (auto& e : c) e += d1.n_edges;
        out.crossings.insert(out.crossings.end(), shifted.crossings.begin(),
                             shifted.crossings.end());
        out.n_edges += d2.n_edges;
        out.free_circles += d2.free_circles - 1;
        out.validate();
        return out;
    }
    if (d1.marked_free_circle) {
        PlanarDiagram out = connected_sum(d2, d1);
        // keep d1-first crossing order
        PlanarDiagram reordered = out;
        reordered.crossings.clear();
        std::size_t n2 = d2.n_crossings();
        for (std::size_t i = n2; i < out.crossings.size(); ++i)
            reordered.crossings.push_back(out.crossings[i]);
        for (std::size_t i = 0; i < n2; ++i) reordered.crossings.push_back(out.crossings[i]);
        return reordered;
    }

    uint32_t m1 = *d1.marked_edge;
    uint32_t m2 = *d2.marked_edge + d1.n_edges;
    PlanarDiagram out;
    out.n_edges = d1.n_edges + d2.n_edges;
    out.free_circles = d1.free_circles + d2.free_circles;
    out.crossings = d1.crossings;
    for (const auto& c : d2.crossings) {
        std::array<uint32_t, 4> t{};
        for (int k = 0; k < 4; ++k) t[std::size_t(k)] = c[std::size_t(k)] + d1.n_edges;
        out.crossings.push_back(t);
    }
    // splice: first occurrence of m1 keeps m1, second becomes m2;
    // first occurrence of m2 becomes m1, second keeps m2.
    std::vector<std::pair<std::size_t, int>> pos1, pos2;
    for (std::size_t ci = 0; ci < out.crossings.size(); ++ci) {
        for (int k = 0; k < 4; ++k) {
            uint32_t e = out.crossings[ci][std::size_t(k)];
            if (e == m1) pos1.emplace_back(ci, k);
            if (e == m2) pos2.emplace_back(ci, k);
        }
    }
    if (pos1.size() != 2 || pos2.size() != 2)
        throw IntegrityError("connected_sum: marked edges not twice-incident");
    out.crossings[pos1[1].first][std::size_t(pos1[1].second)] = m2;
    out.crossings[pos2[0].first][std::size_t(pos2[0].second)] = m1;
    out.marked_edge = m1;
    out = renumber_dense(std::move(out));
    out.validate();
    return out;
}

PlanarDiagram disjoint_union(const PlanarDiagram& d1, const PlanarDiagram& d2) {
    PlanarDiagram out = d1;
    for (const auto& c : d2.crossings) {
        std::array<uint32_t, 4> t{};
        for (int k = 0; k < 4; ++k) t[std::size_t(k)] = c[std::size_t(k)] + d1.n_edges;
        out.crossings.push_back(t);
    }
    out.n_edges = d1.n_edges + d2.n_edges;
    out.free_circles = d1.free_circles + d2.free_circles;
    out.validate();
    return out;
}

PlanarDiagram resolve_crossing(const PlanarDiagram& d, std::size_t c, int bit) {
    d.validate();
    if (c >= d.n_crossings()) throw PreconditionError("resolve_crossing: no such crossing");
    UnionFind uf(d.n_edges);
    const auto& t = d.crossings[c];
    if (bit) {
        uf.unite(t[0], t[3]);
        uf.unite(t[1], t[2]);
    } else {
        uf.unite(t[0], t[1]);
        uf.unite(t[2], t[3]);
    }
    PlanarDiagram out;
    out.free_circles = d.free_circles;
    std::vector<bool> used(d.n_edges, false);
    for (std::size_t i = 0; i < d.n_crossings(); ++i) {
        if (i == c) continue;
        std::array<uint32_t, 4> nt{};
        for (int k = 0; k < 4; ++k) {
            nt[std::size_t(k)] = uf.find(d.crossings[i][std::size_t(k)]);
            used[nt[std::size_t(k)]] = true;
        }
        out.crossings.push_back(nt);
    }
    // an edge class never used by a remaining crossing closed up into a circle
    uint32_t orphans = 0;
    std::vector<bool> counted(d.n_edges, false);
    for (uint32_t e = 0; e < d.n_edges; ++e) {
        uint32_t root = uf.find(e);
        if (!used[root] && !counted[root]) {
            counted[root] = true;
            ++orphans;
        }
    }
    out.free_circles += orphans;
    out.n_edges = d.n_edges;
    if (d.marked_edge) {
        uint32_t root = uf.find(*d.marked_edge);
        if (used[root])
            out.marked_edge = root;
        else
            out.marked_free_circle = true; // mark sits on the new free circle
    }
    out.marked_free_circle = out.marked_free_circle || d.marked_free_circle;
    out = renumber_dense(std::move(out));
    out.validate();
    return out;
}

} // namespace khovcss
