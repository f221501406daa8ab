#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "homforge/graph.hpp"

namespace homforge {

namespace detail {

// Backtracking homomorphism search with forward checking. Assigns X-vertices
// in index order and tries Y-vertices ascending, so homs are visited in
// lexicographic order of the map sequence. Y is limited to 64 vertices; that
// covers everything this artifact builds (the vertex guard applies upstream).
class HomSearcher {
public:
    HomSearcher(const Graph& x, const Graph& y, const std::vector<int>* pin = nullptr)
        : x_(x), y_(y) {
        if (y.n > 64) throw GuardExceeded("hom search: codomain exceeds 64 vertices");
        out_.assign(y.n, 0);
        in_.assign(y.n, 0);
        uint64_t loops = 0;
        for (const auto& [u, v] : y.arcs) {
            out_[u] |= 1ull << v;
            in_[v] |= 1ull << u;
            if (u == v) loops |= 1ull << u;
        }
        uint64_t all = (y.n == 64) ? ~0ull : ((1ull << y.n) - 1);
        init_.assign(x.n, all);
        if (pin) {
            for (int v = 0; v < x.n; ++v)
                if ((*pin)[v] >= 0) init_[v] = 1ull << (*pin)[v];
        }
        fwd_.resize(x.n);
        rfwd_.resize(x.n);
        for (const auto& [u, v] : x.arcs) {
            if (u == v)
                init_[u] &= loops;  // loop must land on a loop
            else if (v > u)
                fwd_[u].push_back(v);  // (u,v): once u is placed, v needs an out-neighbor
            else
                rfwd_[v].push_back(u);  // (u,v) with u > v: u needs an in-neighbor of y(v)
        }
    }

    // visit(map) -> bool; return false to stop the whole search.
    void run(const std::function<bool(const std::vector<int>&)>& visit) {
        if (x_.n == 0) {
            visit({});
            return;
        }
        if (y_.n == 0) return;
        map_.assign(x_.n, -1);
        cand_ = init_;
        place(0, visit);
    }

private:
    bool place(int u, const std::function<bool(const std::vector<int>&)>& visit) {
        uint64_t avail = cand_[u];
        while (avail) {
            int yv = __builtin_ctzll(avail);
            avail &= avail - 1;
            map_[u] = yv;
            if (u + 1 == x_.n) {
                if (!visit(map_)) return false;
                continue;
            }
            std::vector<std::pair<int, uint64_t>> saved;
            bool dead = false;
            auto restrict_to = [&](int w, uint64_t mask) {
                saved.push_back({w, cand_[w]});
                cand_[w] &= mask;
                if (!cand_[w]) dead = true;
            };
            for (int w : fwd_[u]) restrict_to(w, out_[yv]);
            for (int w : rfwd_[u]) restrict_to(w, in_[yv]);
            bool keep_going = dead || place(u + 1, visit);
            for (auto it = saved.rbegin(); it != saved.rend(); ++it) cand_[it->first] = it->second;
            if (!keep_going) return false;
        }
        return true;
    }

    const Graph& x_;
    const Graph& y_;
    std::vector<uint64_t> out_, in_, init_, cand_;
    std::vector<std::vector<int>> fwd_, rfwd_;
    std::vector<int> map_;
};

}  // namespace detail

/// Visits every homomorphism X -> Y exactly once, in lexicographic order of
/// the map sequence. The visitor returns false to abort early.
inline void for_each_hom(const Graph& x, const Graph& y,
                         const std::function<bool(const std::vector<int>&)>& visit) {
    detail::HomSearcher(x, y).run(visit);
}

/// All homomorphisms X -> Y in canonical (lexicographic) order. For X empty
/// this is the single empty map.
inline std::vector<GraphHom> enumerate_homs(const Graph& x, const Graph& y) {
    std::vector<GraphHom> out;
    for_each_hom(x, y, [&](const std::vector<int>& m) {
        out.push_back(GraphHom{x, y, m});
        return true;
    });
    return out;
}

inline long long count_homs(const Graph& x, const Graph& y) {
    long long c = 0;
    for_each_hom(x, y, [&](const std::vector<int>&) {
        ++c;
        return true;
    });
    return c;
}

/// Counts homs but stops once `limit` have been seen.
inline long long count_homs_up_to(const Graph& x, const Graph& y, long long limit) {
    if (limit <= 0) return 0;
    long long c = 0;
    for_each_hom(x, y, [&](const std::vector<int>&) { return ++c < limit; });
    return c;
}

inline bool has_hom(const Graph& x, const Graph& y) { return count_homs_up_to(x, y, 1) > 0; }

/// Hom(X,X) = {id}.
inline bool is_rigid(const Graph& x) {
    bool only_id = true;
    long long seen = 0;
    for_each_hom(x, x, [&](const std::vector<int>& m) {
        ++seen;
        for (int i = 0; i < x.n; ++i)
            if (m[i] != i) {
                only_id = false;
                return false;
            }
        return seen < 2;
    });
    return only_id && seen >= 1;
}

/// Homs X -> Y whose map agrees with a partial assignment (pin[v] == -1 free),
/// in lexicographic order. Lists extension candidates for the small-object step.
inline std::vector<GraphHom> enumerate_homs_pinned(const Graph& x, const Graph& y,
                                                   const std::vector<int>& pin) {
    std::vector<GraphHom> out;
    detail::HomSearcher(x, y, &pin).run([&](const std::vector<int>& m) {
        out.push_back(GraphHom{x, y, m});
        return true;
    });
    return out;
}

}  // namespace homforge
