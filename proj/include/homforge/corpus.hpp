#pragma once

#include <map>
#include <set>
#include <vector>

#include "homforge/canonical.hpp"
#include "homforge/graph.hpp"
#include "homforge/hom_search.hpp"

namespace homforge {

/// All pairwise non-isomorphic digraphs (loops allowed) with at most max_n
/// vertices, as canonical representatives sorted by (n, arc encoding).
/// max_n is capped at 4: beyond that the labeled enumeration blows up.
inline std::vector<Graph> canonical_corpus(int max_n, bool include_empty = false) {
    if (max_n < 0 || max_n > 4)
        throw GuardExceeded("canonical_corpus: max_n must be in [0, 4]");
    std::vector<Graph> out;
    if (include_empty) {
        Graph e = empty_graph();
        e.id = e.content_key();
        out.push_back(std::move(e));
    }
    for (int n = 1; n <= max_n; ++n) {
        std::set<Graph> reps;
        uint64_t total = 1ull << (n * n);
        for (uint64_t mask = 0; mask < total; ++mask) {
            std::vector<Arc> arcs;
            for (int u = 0; u < n; ++u)
                for (int v = 0; v < n; ++v)
                    if (mask >> (u * n + v) & 1) arcs.push_back({u, v});
            Graph g = Graph::make("", n, std::move(arcs));
            reps.insert(canonical_form(g).canon);
        }
        for (const Graph& g : reps) {
            Graph c = g;
            c.id = c.content_key();
            out.push_back(std::move(c));
        }
    }
    return out;
}

/// Memoizing hom-set table over a fixed corpus.
class HomTable {
public:
    explicit HomTable(std::vector<Graph> corpus) : corpus_(std::move(corpus)) {}

    const std::vector<Graph>& corpus() const { return corpus_; }

    const std::vector<GraphHom>& homs(size_t i, size_t j) const {
        auto key = std::make_pair(i, j);
        auto it = cache_.find(key);
        if (it == cache_.end())
            it = cache_.emplace(key, enumerate_homs(corpus_[i], corpus_[j])).first;
        return it->second;
    }

private:
    std::vector<Graph> corpus_;
    mutable std::map<std::pair<size_t, size_t>, std::vector<GraphHom>> cache_;
};

}  // namespace homforge
