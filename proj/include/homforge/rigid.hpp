#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "homforge/canonical.hpp"
#include "homforge/graph.hpp"
#include "homforge/hom_search.hpp"

namespace homforge {

namespace detail {

// Deterministic candidate stream for the rigid-system search. Vertex counts
// ascend; within a count, arc masks ascend. Loops are excluded throughout: a
// loop vertex absorbs a constant map from every graph, so no graph with a
// loop can join a system of size >= 2. From five vertices on only tournaments
// are streamed, which keeps the space tractable while still containing
// pairwise-rigid families (non-isomorphic asymmetric tournaments of equal
// size admit no homs between each other).
class RigidCandidateStream {
public:
    explicit RigidCandidateStream(int max_vertices, uint64_t max_masks_per_n = 1ull << 22)
        : max_n_(max_vertices), max_masks_(max_masks_per_n) {}

    // Ensures candidate i exists; false when the stream is exhausted.
    bool ensure(size_t i) {
        while (candidates_.size() <= i) {
            if (!advance()) return false;
        }
        return true;
    }

    const Graph& at(size_t i) const { return candidates_[i]; }
    bool truncated() const { return truncated_; }
    int bound_reached() const { return cur_n_; }

private:
    bool advance() {
        while (true) {
            if (cur_n_ > max_n_) return false;
            uint64_t total = total_masks(cur_n_);
            if (cur_mask_ >= total || cur_mask_ >= max_masks_) {
                if (cur_mask_ >= max_masks_ && cur_mask_ < total) truncated_ = true;
                ++cur_n_;
                cur_mask_ = 0;
                continue;
            }
            Graph g = build(cur_n_, cur_mask_++);
            if (!is_rigid(g)) continue;
            CanonResult c = canonical_form(g);
            if (!seen_.insert(c.canon.content_key()).second) continue;
            candidates_.push_back(c.canon);
            return true;
        }
    }

    uint64_t total_masks(int n) const {
        if (n <= 4) return 1ull << (n * (n - 1));     // all loop-free digraphs
        return 1ull << (n * (n - 1) / 2);             // tournaments
    }

    Graph build(int n, uint64_t mask) const {
        std::vector<Arc> arcs;
        if (n <= 4) {
            int bit = 0;
            for (int u = 0; u < n; ++u)
                for (int v = 0; v < n; ++v) {
                    if (u == v) continue;
                    if (mask >> bit & 1) arcs.push_back({u, v});
                    ++bit;
                }
        } else {
            int bit = 0;
            for (int u = 0; u < n; ++u)
                for (int v = u + 1; v < n; ++v) {
                    if (mask >> bit & 1)
                        arcs.push_back({v, u});
                    else
                        arcs.push_back({u, v});
                    ++bit;
                }
        }
        return Graph::make("cand", n, std::move(arcs));
    }

    int max_n_;
    uint64_t max_masks_;
    int cur_n_ = 1;
    uint64_t cur_mask_ = 0;
    bool truncated_ = false;
    std::set<std::string> seen_;
    std::vector<Graph> candidates_;
};

}  // namespace detail

/// Finds `count` graphs with at most max_vertices vertices forming a rigid
/// system: Hom(X_i, X_j) empty for i != j and Hom(X_i, X_i) = {id}. The
/// search order is deterministic (depth-first over the candidate stream), so
/// repeated runs return the same system. Throws SearchExhausted when the
/// bounded space contains no system of the requested size.
inline std::vector<Graph> rigid_search(int max_vertices, int count) {
    if (count < 1) throw Error("rigid_search: count must be >= 1");
    if (max_vertices < 1) throw Error("rigid_search: max_vertices must be >= 1");

    detail::RigidCandidateStream stream(max_vertices);
    std::map<std::pair<size_t, size_t>, bool> compat_memo;
    auto compatible = [&](size_t i, size_t j) {
        auto key = std::make_pair(std::min(i, j), std::max(i, j));
        auto it = compat_memo.find(key);
        if (it != compat_memo.end()) return it->second;
        bool ok = !has_hom(stream.at(key.first), stream.at(key.second)) &&
                  !has_hom(stream.at(key.second), stream.at(key.first));
        compat_memo[key] = ok;
        return ok;
    };

    std::vector<size_t> chosen;
    std::function<bool(size_t)> dfs = [&](size_t start) -> bool {
        if ((int)chosen.size() == count) return true;
        for (size_t i = start; stream.ensure(i); ++i) {
            bool ok = true;
            for (size_t j : chosen)
                if (!compatible(j, i)) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            chosen.push_back(i);
            if (dfs(i + 1)) return true;
            chosen.pop_back();
        }
        return false;
    };

    if (!dfs(0)) {
        std::string note = stream.truncated() ? " (stream truncated by the per-size mask cap)" : "";
        throw SearchExhausted("rigid_search: no system of size " + std::to_string(count) +
                              " within " + std::to_string(max_vertices) + " vertices" + note);
    }
    std::vector<Graph> out;
    for (size_t i : chosen) out.push_back(stream.at(i));
    return out;
}

}  // namespace homforge
