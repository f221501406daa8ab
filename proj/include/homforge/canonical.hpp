#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <tuple>
#include <vector>

#include "homforge/graph.hpp"

namespace homforge {

/// Canonical representative of the isomorphism class of X, plus an
/// isomorphism X -> representative. Constant on isomorphism classes and
/// idempotent on representatives (re-canonicalizing yields the identity iso).
struct CanonResult {
    Graph canon;
    GraphHom iso;
};

namespace detail {

// Degree refinement. Colors are ranks of label-independent descriptors, so
// isomorphic graphs get corresponding color vectors.
inline std::vector<int> refine_colors(const Graph& g) {
    int n = g.n;
    std::vector<std::vector<int>> out(n), in(n);
    for (const auto& [u, v] : g.arcs) {
        out[u].push_back(v);
        in[v].push_back(u);
    }
    using Desc = std::tuple<int, int, int, int, std::vector<int>, std::vector<int>>;
    std::vector<int> color(n, 0);
    {  // initial pass: loop flag + degrees
        std::map<std::tuple<int, int, int>, std::vector<int>> groups;
        for (int v = 0; v < n; ++v)
            groups[{g.has_arc(v, v) ? 1 : 0, (int)out[v].size(), (int)in[v].size()}].push_back(v);
        int c = 0;
        for (auto& [d, vs] : groups) {
            for (int v : vs) color[v] = c;
            ++c;
        }
    }
    for (int round = 0; round <= n + 1; ++round) {
        std::map<Desc, std::vector<int>> groups;
        for (int v = 0; v < n; ++v) {
            std::vector<int> oc, ic;
            for (int w : out[v]) oc.push_back(color[w]);
            for (int w : in[v]) ic.push_back(color[w]);
            std::sort(oc.begin(), oc.end());
            std::sort(ic.begin(), ic.end());
            groups[{color[v], g.has_arc(v, v) ? 1 : 0, (int)oc.size(), (int)ic.size(),
                    std::move(oc), std::move(ic)}]
                .push_back(v);
        }
        std::vector<int> next(n);
        int c = 0;
        for (auto& [d, vs] : groups) {
            for (int v : vs) next[v] = c;
            ++c;
        }
        if (next == color) break;
        color = std::move(next);
    }
    return color;
}

// Branch-and-bound over vertex orderings compatible with the refinement
// classes, minimizing the incremental adjacency encoding. Keeps the first
// minimal ordering found, which makes canonical inputs map by the identity.
class CanonSearch {
public:
    explicit CanonSearch(const Graph& g) : g_(g), n_(g.n) {
        adj_.assign(n_, std::vector<char>(n_, 0));
        for (const auto& [u, v] : g.arcs) adj_[u][v] = 1;
        color_ = refine_colors(g);
        pos_color_ = color_;
        std::sort(pos_color_.begin(), pos_color_.end());
        used_.assign(n_, 0);
        cur_.reserve(n_);
    }

    std::vector<int> run() {
        dfs(false);
        return best_perm_;  // best_perm_[p] = original vertex at position p
    }

private:
    void dfs(bool better) {
        int p = static_cast<int>(cur_.size());
        if (p == n_) {
            if (!have_best_ || better) {
                best_perm_ = cur_;
                best_enc_ = cur_enc_;
                have_best_ = true;
            }
            return;
        }
        for (int v = 0; v < n_; ++v) {
            if (used_[v] || color_[v] != pos_color_[p]) continue;
            size_t mark = cur_enc_.size();
            for (int q = 0; q < p; ++q) {
                cur_enc_.push_back(adj_[cur_[q]][v]);
                cur_enc_.push_back(adj_[v][cur_[q]]);
            }
            cur_enc_.push_back(adj_[v][v]);
            bool child_better = better;
            bool prune = false;
            if (have_best_ && !better) {
                for (size_t i = mark; i < cur_enc_.size(); ++i) {
                    if (cur_enc_[i] < best_enc_[i]) {
                        child_better = true;
                        break;
                    }
                    if (cur_enc_[i] > best_enc_[i]) {
                        prune = true;
                        break;
                    }
                }
            }
            if (!prune) {
                used_[v] = 1;
                cur_.push_back(v);
                dfs(child_better);
                cur_.pop_back();
                used_[v] = 0;
            }
            cur_enc_.resize(mark);
        }
    }

    const Graph& g_;
    int n_;
    std::vector<std::vector<char>> adj_;
    std::vector<int> color_, pos_color_;
    std::vector<char> used_;
    std::vector<int> cur_, best_perm_;
    std::vector<uint8_t> cur_enc_, best_enc_;
    bool have_best_ = false;
};

}  // namespace detail

inline CanonResult canonical_form(const Graph& x) {
    if (x.n == 0) {
        Graph c = empty_graph();
        c.id = c.content_key();
        return CanonResult{c, GraphHom{x, c, {}}};
    }
    detail::CanonSearch search(x);
    std::vector<int> perm = search.run();  // position -> original vertex
    std::vector<int> pos(x.n);
    for (int p = 0; p < x.n; ++p) pos[perm[p]] = p;
    std::vector<Arc> arcs;
    arcs.reserve(x.arcs.size());
    for (const auto& [u, v] : x.arcs) arcs.push_back({pos[u], pos[v]});
    Graph canon = Graph::make("", x.n, std::move(arcs));
    canon.id = canon.content_key();
    return CanonResult{canon, GraphHom{x, canon, std::move(pos)}};
}

inline bool is_canonical(const Graph& x) {
    CanonResult c = canonical_form(x);
    return c.canon == x;
}

/// Transports a hom between arbitrary graphs to one between the canonical
/// representatives of its endpoints.
inline GraphHom canonicalize_hom(const GraphHom& f) {
    CanonResult cd = canonical_form(f.dom);
    CanonResult cc = canonical_form(f.cod);
    std::vector<int> m(f.dom.n);
    // inverse of cd.iso followed by f followed by cc.iso
    std::vector<int> inv(f.dom.n);
    for (int v = 0; v < f.dom.n; ++v) inv[cd.iso.map[v]] = v;
    for (int p = 0; p < f.dom.n; ++p) m[p] = cc.iso.map[f.map[inv[p]]];
    return GraphHom::make(cd.canon, cc.canon, std::move(m));
}

}  // namespace homforge
