#pragma once

#include <string>
#include <vector>

#include "homforge/graph.hpp"

namespace homforge {

/// Layout table for the full embedding E of graphs into nonempty graphs.
///
/// E(X) consists of one shared base gadget (the image of the empty graph),
/// one tail vertex per vertex of X hanging off the base, and one middle
/// vertex per arc sitting on a 2-step path between the two tails. The layout
/// is configurable because only its fullness matters: the shipped default is
/// gated by the |Hom(EX,EY)| = |Hom(X,Y)| acceptance check.
struct GadgetLayout {
    // base gadget on vertices {0,..,base_n-1}
    int base_n = 3;
    std::vector<Arc> base_arcs = {{0, 1}, {0, 2}, {1, 2}};
    // each vertex v of X adds tail t_v with arc (attach, t_v)
    int vertex_attach = 2;
};

/// E on objects. Vertex layout: base vertices first, then one tail per
/// X-vertex, then one middle vertex per X-arc (in X's arc order).
inline Graph gadget_embed_obj(const Graph& x, const GadgetLayout& layout = {}) {
    int base = layout.base_n;
    int tails = base;           // tail of vertex v sits at tails + v
    int mids = tails + x.n;     // middle of arc k sits at mids + k
    int total = mids + static_cast<int>(x.arcs.size());
    std::vector<Arc> arcs = layout.base_arcs;
    for (int v = 0; v < x.n; ++v) arcs.push_back({layout.vertex_attach, tails + v});
    for (size_t k = 0; k < x.arcs.size(); ++k) {
        auto [u, v] = x.arcs[k];
        arcs.push_back({tails + u, mids + static_cast<int>(k)});
        arcs.push_back({mids + static_cast<int>(k), tails + v});
    }
    return Graph::make("E(" + x.id + ")", total, std::move(arcs));
}

/// E on morphisms: base fixed pointwise, tails follow f, middles follow the
/// arc images. Functorial by construction.
inline GraphHom gadget_embed_mor(const GraphHom& f, const GadgetLayout& layout = {}) {
    Graph ex = gadget_embed_obj(f.dom, layout);
    Graph ey = gadget_embed_obj(f.cod, layout);
    int base = layout.base_n;
    std::vector<int> m(ex.n);
    for (int b = 0; b < base; ++b) m[b] = b;
    for (int v = 0; v < f.dom.n; ++v) m[base + v] = base + f.map[v];
    int mids_x = base + f.dom.n;
    int mids_y = base + f.cod.n;
    for (size_t k = 0; k < f.dom.arcs.size(); ++k) {
        auto [u, v] = f.dom.arcs[k];
        Arc img{f.map[u], f.map[v]};
        auto it = std::lower_bound(f.cod.arcs.begin(), f.cod.arcs.end(), img);
        if (it == f.cod.arcs.end() || *it != img)
            throw Error("gadget_embed_mor: arc image missing in codomain");
        m[mids_x + static_cast<int>(k)] =
            mids_y + static_cast<int>(it - f.cod.arcs.begin());
    }
    return GraphHom::make(std::move(ex), std::move(ey), std::move(m));
}

}  // namespace homforge
