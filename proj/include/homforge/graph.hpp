#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "homforge/errors.hpp"

namespace homforge {

using Arc = std::pair<int, int>;

/// Finite directed graph with loops allowed: vertices 0..n-1 plus a set of
/// ordered arcs. The id is metadata; equality and ordering go by content.
struct Graph {
    std::string id;
    int n = 0;
    std::vector<Arc> arcs;  // sorted, duplicate-free, endpoints in [0, n)

    static Graph make(std::string id, int n, std::vector<Arc> arcs) {
        if (n < 0) throw Error("graph '" + id + "': negative vertex count");
        std::sort(arcs.begin(), arcs.end());
        arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
        for (const auto& [u, v] : arcs) {
            if (u < 0 || u >= n || v < 0 || v >= n)
                throw Error("graph '" + id + "': arc (" + std::to_string(u) + "," +
                            std::to_string(v) + ") out of range");
        }
        Graph g;
        g.id = std::move(id);
        g.n = n;
        g.arcs = std::move(arcs);
        return g;
    }

    bool has_arc(int u, int v) const {
        return std::binary_search(arcs.begin(), arcs.end(), Arc{u, v});
    }

    bool empty() const { return n == 0; }

    // Content comparisons; ids deliberately ignored.
    friend bool operator==(const Graph& a, const Graph& b) {
        return a.n == b.n && a.arcs == b.arcs;
    }
    friend bool operator!=(const Graph& a, const Graph& b) { return !(a == b); }
    friend bool operator<(const Graph& a, const Graph& b) {
        if (a.n != b.n) return a.n < b.n;
        return a.arcs < b.arcs;
    }

    /// Content key "g<n>:<hex arc bitmask>", row-major bit u*n+v.
    /// Canonical representatives use this as their id.
    std::string content_key() const {
        std::string hex;
        int bits = n * n;
        int nibbles = (bits + 3) / 4;
        hex.reserve(nibbles);
        bool leading = true;
        for (int i = nibbles - 1; i >= 0; --i) {
            int val = 0;
            for (int b = 0; b < 4; ++b) {
                int bit = i * 4 + b;
                if (bit >= bits) continue;
                int u = bit / n, v = bit % n;
                if (has_arc(u, v)) val |= 1 << b;
            }
            if (val == 0 && leading && i > 0) continue;
            leading = false;
            hex.push_back("0123456789abcdef"[val]);
        }
        if (hex.empty()) hex = "0";
        return "g" + std::to_string(n) + ":" + hex;
    }
};

inline Graph empty_graph() { return Graph::make("empty", 0, {}); }

inline Graph single_vertex(bool loop = false, std::string id = "") {
    std::vector<Arc> arcs;
    if (loop) arcs.push_back({0, 0});
    if (id.empty()) id = loop ? "loop1" : "pt";
    return Graph::make(std::move(id), 1, std::move(arcs));
}

/// All ordered pairs including loops; every vertex map into it is a hom.
inline Graph full_graph(int n) {
    if (n < 0) throw Error("full_graph: negative n");
    std::vector<Arc> arcs;
    arcs.reserve(static_cast<size_t>(n) * n);
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) arcs.push_back({u, v});
    return Graph::make("K" + std::to_string(n), n, std::move(arcs));
}

/// Transitive chain L_n: vertices 0..n-1, arc (i,j) iff i < j.
inline Graph chain_graph(int n) {
    if (n < 1) throw Error("chain_graph: n must be >= 1");
    std::vector<Arc> arcs;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) arcs.push_back({i, j});
    return Graph::make("L" + std::to_string(n), n, std::move(arcs));
}

/// Vertex map preserving every arc.
struct GraphHom {
    Graph dom, cod;
    std::vector<int> map;  // length dom.n, values in [0, cod.n)

    static bool valid(const Graph& dom, const Graph& cod, const std::vector<int>& map) {
        if (static_cast<int>(map.size()) != dom.n) return false;
        for (int v : map)
            if (v < 0 || v >= cod.n) return false;
        for (const auto& [u, v] : dom.arcs)
            if (!cod.has_arc(map[u], map[v])) return false;
        return true;
    }

    static GraphHom make(Graph dom, Graph cod, std::vector<int> map) {
        if (!valid(dom, cod, map))
            throw Error("not a graph homomorphism " + dom.id + " -> " + cod.id);
        return GraphHom{std::move(dom), std::move(cod), std::move(map)};
    }

    static GraphHom identity(const Graph& g) {
        std::vector<int> m(g.n);
        std::iota(m.begin(), m.end(), 0);
        return GraphHom{g, g, std::move(m)};
    }

    bool is_identity() const {
        if (dom != cod) return false;
        for (int i = 0; i < dom.n; ++i)
            if (map[i] != i) return false;
        return true;
    }

    bool injective() const {
        std::vector<int> seen(cod.n, 0);
        for (int v : map)
            if (seen[v]++) return false;
        return true;
    }

    friend bool operator==(const GraphHom& a, const GraphHom& b) {
        return a.dom == b.dom && a.cod == b.cod && a.map == b.map;
    }
    friend bool operator<(const GraphHom& a, const GraphHom& b) {
        if (!(a.dom == b.dom)) return a.dom < b.dom;
        if (!(a.cod == b.cod)) return a.cod < b.cod;
        return a.map < b.map;
    }
};

/// g after f. Throws CompositionError unless f.cod = g.dom (by content).
inline GraphHom compose(const GraphHom& g, const GraphHom& f) {
    if (f.cod != g.dom)
        throw CompositionError("compose: codomain of " + f.dom.id + "->" + f.cod.id +
                               " does not match domain of " + g.dom.id + "->" + g.cod.id);
    std::vector<int> m(f.dom.n);
    for (int i = 0; i < f.dom.n; ++i) m[i] = g.map[f.map[i]];
    return GraphHom{f.dom, g.cod, std::move(m)};
}

/// f = mono . epi with epi vertex-surjective onto the image graph and mono a
/// subgraph inclusion; image arcs are exactly the images of dom arcs.
struct ImageFactorization {
    Graph image;
    GraphHom epi;   // dom -> image
    GraphHom mono;  // image -> cod
};

inline ImageFactorization image_factorization(const GraphHom& f) {
    std::vector<int> used;  // cod vertices hit, ascending
    {
        std::vector<char> hit(f.cod.n, 0);
        for (int v : f.map) hit[v] = 1;
        for (int v = 0; v < f.cod.n; ++v)
            if (hit[v]) used.push_back(v);
    }
    std::vector<int> rank(f.cod.n, -1);
    for (size_t i = 0; i < used.size(); ++i) rank[used[i]] = static_cast<int>(i);

    std::vector<Arc> img_arcs;
    for (const auto& [u, v] : f.dom.arcs) img_arcs.push_back({rank[f.map[u]], rank[f.map[v]]});
    Graph image = Graph::make("im(" + f.dom.id + ")", static_cast<int>(used.size()),
                              std::move(img_arcs));

    std::vector<int> epi_map(f.dom.n);
    for (int i = 0; i < f.dom.n; ++i) epi_map[i] = rank[f.map[i]];
    GraphHom epi{f.dom, image, std::move(epi_map)};
    GraphHom mono{image, f.cod, used};
    return ImageFactorization{std::move(image), std::move(epi), std::move(mono)};
}

/// Categorical product: vertex set = pairs, arcs componentwise.
struct ProductResult {
    Graph graph;
    GraphHom proj_x, proj_y;
};

inline ProductResult product(const Graph& x, const Graph& y) {
    int n = x.n * y.n;
    std::vector<Arc> arcs;
    for (const auto& [u, v] : x.arcs)
        for (const auto& [u2, v2] : y.arcs)
            arcs.push_back({u * y.n + u2, v * y.n + v2});
    Graph p = Graph::make("(" + x.id + "x" + y.id + ")", n, std::move(arcs));
    std::vector<int> px(n), py(n);
    for (int i = 0; i < n; ++i) {
        px[i] = i / y.n;
        py[i] = i % y.n;
    }
    return ProductResult{p, GraphHom{p, x, std::move(px)}, GraphHom{p, y, std::move(py)}};
}

namespace detail {

// Union-find over 0..n-1.
struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

// Quotient of g by the classes of uf; classes numbered by smallest member.
inline std::pair<Graph, std::vector<int>> quotient(const Graph& g, UnionFind& uf,
                                                   const std::string& id) {
    std::vector<int> cls(g.n, -1);
    int k = 0;
    for (int v = 0; v < g.n; ++v)
        if (uf.find(v) == v) cls[v] = k++;
    std::vector<int> proj(g.n);
    for (int v = 0; v < g.n; ++v) proj[v] = cls[uf.find(v)];
    std::vector<Arc> arcs;
    for (const auto& [u, v] : g.arcs) arcs.push_back({proj[u], proj[v]});
    return {Graph::make(id, k, std::move(arcs)), std::move(proj)};
}

inline Graph disjoint_union(const Graph& a, const Graph& b, const std::string& id) {
    std::vector<Arc> arcs = a.arcs;
    for (const auto& [u, v] : b.arcs) arcs.push_back({u + a.n, v + a.n});
    return Graph::make(id, a.n + b.n, std::move(arcs));
}

}  // namespace detail

/// Pushout of f: A -> B and g: A -> C over the shared domain A.
struct PushoutResult {
    Graph graph;
    GraphHom inj_b, inj_c;
};

inline PushoutResult pushout(const GraphHom& f, const GraphHom& g) {
    if (f.dom != g.dom) throw CompositionError("pushout: morphisms do not share a domain");
    const Graph& b = f.cod;
    const Graph& c = g.cod;
    Graph du = detail::disjoint_union(b, c, "po");
    detail::UnionFind uf(du.n);
    for (int a = 0; a < f.dom.n; ++a) uf.unite(f.map[a], g.map[a] + b.n);
    auto [p, proj] = detail::quotient(du, uf, "po(" + b.id + "," + c.id + ")");
    std::vector<int> mb(b.n), mc(c.n);
    for (int v = 0; v < b.n; ++v) mb[v] = proj[v];
    for (int v = 0; v < c.n; ++v) mc[v] = proj[v + b.n];
    return PushoutResult{p, GraphHom{b, p, std::move(mb)}, GraphHom{c, p, std::move(mc)}};
}

/// Disjoint union with all basepoints identified to vertex 0 of the result.
struct WedgeResult {
    Graph graph;
    std::vector<GraphHom> inclusions;
};

inline WedgeResult wedge_sum(const std::vector<Graph>& parts,
                             const std::vector<int>& basepoints) {
    if (parts.size() != basepoints.size())
        throw Error("wedge_sum: parts/basepoints length mismatch");
    for (size_t i = 0; i < parts.size(); ++i)
        if (basepoints[i] < 0 || basepoints[i] >= parts[i].n)
            throw Error("wedge_sum: basepoint " + std::to_string(basepoints[i]) +
                        " invalid in part " + std::to_string(i));
    int total = 1;
    std::vector<std::vector<int>> embed(parts.size());
    for (size_t i = 0; i < parts.size(); ++i) {
        embed[i].resize(parts[i].n);
        for (int v = 0; v < parts[i].n; ++v)
            embed[i][v] = (v == basepoints[i]) ? 0 : total++;
    }
    std::vector<Arc> arcs;
    for (size_t i = 0; i < parts.size(); ++i)
        for (const auto& [u, v] : parts[i].arcs) arcs.push_back({embed[i][u], embed[i][v]});
    Graph w = Graph::make("wedge", total, std::move(arcs));
    WedgeResult res{w, {}};
    for (size_t i = 0; i < parts.size(); ++i)
        res.inclusions.push_back(GraphHom{parts[i], w, embed[i]});
    return res;
}

}  // namespace homforge
