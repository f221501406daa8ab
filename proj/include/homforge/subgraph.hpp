#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "homforge/graph.hpp"

namespace homforge {

/// Poset of all nonempty subgraphs of an ambient graph. A subgraph is a
/// nonempty vertex subset together with any subset of the ambient arcs lying
/// inside it (sub-relations, not just induced subgraphs). Ordered by
/// componentwise inclusion; the ambient graph itself is the top element.
struct SubgraphPoset {
    struct Element {
        uint32_t vertex_mask = 0;
        uint64_t arc_mask = 0;  // bits index the ambient arc list
        Graph graph;            // relabeled 0..k-1 in ambient vertex order
        std::vector<int> vertex_map;  // local vertex -> ambient vertex
    };

    Graph ambient;
    std::vector<Element> elements;  // ordered by (vertex_mask, arc_mask)

    bool leq(size_t i, size_t j) const {
        const Element& a = elements[i];
        const Element& b = elements[j];
        return (a.vertex_mask & ~b.vertex_mask) == 0 && (a.arc_mask & ~b.arc_mask) == 0;
    }

    size_t top_index() const { return elements.size() - 1; }

    /// Inclusion hom from element i into element j; requires leq(i, j).
    GraphHom inclusion(size_t i, size_t j) const {
        if (!leq(i, j)) throw Error("subgraph poset: not an inclusion");
        const Element& a = elements[i];
        const Element& b = elements[j];
        std::vector<int> rank(ambient.n, -1);
        for (size_t p = 0; p < b.vertex_map.size(); ++p) rank[b.vertex_map[p]] = (int)p;
        std::vector<int> m(a.graph.n);
        for (int v = 0; v < a.graph.n; ++v) m[v] = rank[a.vertex_map[v]];
        return GraphHom::make(a.graph, b.graph, std::move(m));
    }

    /// Inclusion of element i into the ambient graph.
    GraphHom inclusion_to_ambient(size_t i) const {
        const Element& a = elements[i];
        return GraphHom::make(a.graph, ambient, a.vertex_map);
    }
};

/// Enumerates every nonempty subgraph of X, guarded against blowup.
/// X must be nonempty and have at most 20 vertices / 64 arcs.
inline SubgraphPoset subgraph_poset(const Graph& x, size_t max_elements = 200000) {
    if (x.n == 0) throw Error("subgraph_poset: empty graph has no nonempty subgraphs");
    if (x.n > 20 || x.arcs.size() > 64)
        throw GuardExceeded("subgraph_poset: ambient graph too large");

    // count first so the guard fires before any allocation storm
    size_t count = 0;
    for (uint32_t vm = 1; vm < (1u << x.n); ++vm) {
        int avail = 0;
        for (const auto& [u, v] : x.arcs)
            if ((vm >> u & 1) && (vm >> v & 1)) ++avail;
        if (avail >= 60) throw GuardExceeded("subgraph_poset: too many arc subsets");
        count += 1ull << avail;
        if (count > max_elements)
            throw GuardExceeded("subgraph_poset: " + std::to_string(count) + "+ elements exceed guard " +
                                std::to_string(max_elements));
    }

    SubgraphPoset poset;
    poset.ambient = x;
    for (uint32_t vm = 1; vm < (1u << x.n); ++vm) {
        std::vector<int> verts;
        std::vector<int> rank(x.n, -1);
        for (int v = 0; v < x.n; ++v)
            if (vm >> v & 1) {
                rank[v] = static_cast<int>(verts.size());
                verts.push_back(v);
            }
        std::vector<int> avail;  // indices into x.arcs
        for (size_t k = 0; k < x.arcs.size(); ++k) {
            auto [u, v] = x.arcs[k];
            if (rank[u] >= 0 && rank[v] >= 0) avail.push_back((int)k);
        }
        for (uint64_t am = 0; am < (1ull << avail.size()); ++am) {
            std::vector<Arc> arcs;
            uint64_t full_mask = 0;
            for (size_t b = 0; b < avail.size(); ++b)
                if (am >> b & 1) {
                    auto [u, v] = x.arcs[avail[b]];
                    arcs.push_back({rank[u], rank[v]});
                    full_mask |= 1ull << avail[b];
                }
            SubgraphPoset::Element el;
            el.vertex_mask = vm;
            el.arc_mask = full_mask;
            el.graph = Graph::make("sub", (int)verts.size(), std::move(arcs));
            el.vertex_map = verts;
            poset.elements.push_back(std::move(el));
        }
    }
    return poset;
}

}  // namespace homforge
