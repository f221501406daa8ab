#pragma once

#include <cstdlib>
#include <string>
#include <vector>

#include "homforge/canonical.hpp"
#include "homforge/graph.hpp"
#include "homforge/hom_search.hpp"
#include "homforge/int_matrix.hpp"

namespace homforge {

/// Vertex guard for reflection/separator blowup; the environment variable
/// HOMFORGE_GUARD_VERTICES overrides the default.
inline long long vertex_guard() {
    if (const char* env = std::getenv("HOMFORGE_GUARD_VERTICES")) {
        long long v = std::atoll(env);
        if (v > 0) return v;
    }
    return 10000;
}

/// f is orthogonal to X iff precomposition Hom(B,X) -> Hom(A,X) is a
/// bijection.
inline bool is_orthogonal(const GraphHom& f, const Graph& x) {
    std::vector<GraphHom> from_b = enumerate_homs(f.cod, x);
    std::vector<GraphHom> from_a = enumerate_homs(f.dom, x);
    if (from_b.size() != from_a.size()) return false;
    std::vector<char> hit(from_a.size(), 0);
    for (const auto& h : from_b) {
        GraphHom pre = compose(h, f);
        auto it = std::lower_bound(from_a.begin(), from_a.end(), pre,
                                   [](const GraphHom& a, const GraphHom& b) { return a.map < b.map; });
        if (it == from_a.end() || !(it->map == pre.map)) return false;
        size_t idx = static_cast<size_t>(it - from_a.begin());
        if (hit[idx]) return false;
        hit[idx] = 1;
    }
    return true;
}

inline std::vector<Graph> perp_objects(const std::vector<GraphHom>& s,
                                       const std::vector<Graph>& candidates) {
    std::vector<Graph> out;
    for (const Graph& x : candidates) {
        bool ok = true;
        for (const GraphHom& f : s)
            if (!is_orthogonal(f, x)) {
                ok = false;
                break;
            }
        if (ok) out.push_back(x);
    }
    return out;
}

inline std::vector<GraphHom> perp_morphisms(const std::vector<Graph>& d,
                                            const std::vector<GraphHom>& candidates) {
    std::vector<GraphHom> out;
    for (const GraphHom& f : candidates) {
        bool ok = true;
        for (const Graph& x : d)
            if (!is_orthogonal(f, x)) {
                ok = false;
                break;
            }
        if (ok) out.push_back(f);
    }
    return out;
}

/// The linearized orthogonality check: precomposition by f extends to
/// Z[Hom(B,X)] -> Z[Hom(A,X)], and f is orthogonal to X exactly when that
/// integer matrix is unimodular. Checked against is_orthogonal; the two can
/// never disagree (the matrix is column-functional, and such a matrix is
/// unimodular iff it is a permutation).
inline bool transported_orthogonality(const GraphHom& f, const Graph& x) {
    std::vector<GraphHom> from_b = enumerate_homs(f.cod, x);
    std::vector<GraphHom> from_a = enumerate_homs(f.dom, x);
    bool linear_iso = false;
    if (from_b.size() == from_a.size()) {
        // one 1 per column at position index(h o f); unimodular iff permutation
        std::vector<char> hit(from_a.size(), 0);
        bool perm = true;
        for (const auto& h : from_b) {
            GraphHom pre = compose(h, f);
            auto it = std::lower_bound(
                from_a.begin(), from_a.end(), pre,
                [](const GraphHom& a, const GraphHom& b) { return a.map < b.map; });
            size_t idx = static_cast<size_t>(it - from_a.begin());
            if (it == from_a.end() || !(it->map == pre.map) || hit[idx]) {
                perm = false;
                break;
            }
            hit[idx] = 1;
        }
        linear_iso = perm;
    }
    bool set_bijection = is_orthogonal(f, x);
    if (linear_iso != set_bijection)
        throw Error("transported_orthogonality: linearized check disagrees with the set check");
    return linear_iso;
}

/// Same decision made the long way around, through an explicit Smith form of
/// the precomposition matrix. Used to cross-validate the structural shortcut.
inline bool transported_orthogonality_snf(const GraphHom& f, const Graph& x) {
    std::vector<GraphHom> from_b = enumerate_homs(f.cod, x);
    std::vector<GraphHom> from_a = enumerate_homs(f.dom, x);
    if (from_b.size() != from_a.size()) return false;
    int n = static_cast<int>(from_b.size());
    IntMatrix m(n, n);
    for (int j = 0; j < n; ++j) {
        GraphHom pre = compose(from_b[j], f);
        auto it = std::lower_bound(from_a.begin(), from_a.end(), pre,
                                   [](const GraphHom& a, const GraphHom& b) { return a.map < b.map; });
        m.at(static_cast<int>(it - from_a.begin()), j) = 1;
    }
    SNFResult s = smith_normal_form(m);
    if (s.rank != n) return false;
    for (int i = 0; i < n; ++i)
        if (s.D.at(i, i) != 1) return false;
    return true;
}

/// Separator diagram A -> A' -> Z_A: for each vertex pair pick a separating
/// morphism into D0 when one exists, take the diagonal into the product of
/// the chosen targets, and split it as image-epi followed by inclusion-mono.
/// alpha is orthogonal to every member of D0 (verified).
struct SeparatorResult {
    GraphHom alpha;   // A -> A' (epi onto the image graph)
    GraphHom mono;    // A' -> Z_A
    Graph z;          // product of chosen separating targets
    int chosen_pairs = 0;
};

inline SeparatorResult separator(const Graph& a, const std::vector<Graph>& d0,
                                 long long max_product_vertices = 0) {
    if (max_product_vertices <= 0) max_product_vertices = vertex_guard();
    // empty product = terminal object = the loop vertex
    Graph z = single_vertex(true, "term");
    GraphHom d = GraphHom::make(a, z, std::vector<int>(a.n, 0));
    int chosen = 0;
    for (int x = 0; x < a.n; ++x)
        for (int y = x + 1; y < a.n; ++y) {
            GraphHom sep{Graph{}, Graph{}, {}};
            bool found = false;
            for (const Graph& zc : d0) {
                for_each_hom(a, zc, [&](const std::vector<int>& m) {
                    if (m[x] == m[y]) return true;
                    sep = GraphHom{a, zc, m};
                    found = true;
                    return false;
                });
                if (found) break;
            }
            if (!found) continue;
            ++chosen;
            if (static_cast<long long>(z.n) * sep.cod.n > max_product_vertices)
                throw GuardExceeded("separator: product exceeds the vertex guard");
            ProductResult pr = product(z, sep.cod);
            std::vector<int> dm(a.n);
            for (int v = 0; v < a.n; ++v) dm[v] = d.map[v] * sep.cod.n + sep.map[v];
            z = pr.graph;
            d = GraphHom::make(a, z, std::move(dm));
        }
    ImageFactorization fac = image_factorization(d);
    for (const Graph& zc : d0)
        if (!is_orthogonal(fac.epi, zc))
            throw Error("separator: alpha failed orthogonality against D0");
    return SeparatorResult{fac.epi, fac.mono, std::move(z), chosen};
}

/// One small-object step, recorded for the reflection trace.
struct ReflectionStep {
    int f_index = 0;
    std::string kind;            // "glue" or "identify"
    std::vector<int> attach_map; // the violating attachment A -> current
    int vertices_after = 0;
    long long arcs_after = 0;

    friend bool operator==(const ReflectionStep& a, const ReflectionStep& b) {
        return a.f_index == b.f_index && a.kind == b.kind && a.attach_map == b.attach_map &&
               a.vertices_after == b.vertices_after && a.arcs_after == b.arcs_after;
    }
};

struct ReflectionResult {
    enum class Status { converged, cap_exceeded };
    Graph lx;
    GraphHom eta;  // X -> LX
    Status status = Status::cap_exceeded;
    int iterations = 0;
    std::vector<ReflectionStep> trace;
};

/// Capped small-object argument. Each iteration fixes the first violation in
/// deterministic order (morphism index, then attachment in canonical order):
/// a missing extension glues along a pushout, a duplicated extension gets
/// coequalized. Convergence means orthogonality to all of S; the cap is a
/// semantic outcome, not a failure, because reflections can be genuinely
/// infinite.
inline ReflectionResult reflect(const Graph& x, const std::vector<GraphHom>& s, int cap,
                                long long max_vertices = 0) {
    if (cap < 1) throw Error("reflect: cap must be >= 1");
    if (max_vertices <= 0) max_vertices = vertex_guard();

    ReflectionResult res;
    Graph current = x;
    std::vector<int> eta(x.n);
    for (int v = 0; v < x.n; ++v) eta[v] = v;

    for (int iter = 0; iter <= cap; ++iter) {
        // find the first violation
        int vf = -1;
        GraphHom attach{Graph{}, Graph{}, {}};
        GraphHom ext1{Graph{}, Graph{}, {}}, ext2{Graph{}, Graph{}, {}};
        bool need_glue = false, need_identify = false;
        for (size_t fi = 0; fi < s.size() && vf < 0; ++fi) {
            const GraphHom& f = s[fi];
            for (const GraphHom& g : enumerate_homs(f.dom, current)) {
                std::vector<int> pin(f.cod.n, -1);
                bool consistent = true;
                for (int v = 0; v < f.dom.n; ++v) {
                    int tv = f.map[v];
                    if (pin[tv] >= 0 && pin[tv] != g.map[v]) consistent = false;
                    pin[tv] = g.map[v];
                }
                std::vector<GraphHom> exts =
                    consistent ? enumerate_homs_pinned(f.cod, current, pin)
                               : std::vector<GraphHom>{};
                if (exts.empty()) {
                    vf = static_cast<int>(fi);
                    attach = g;
                    need_glue = true;
                    break;
                }
                if (exts.size() >= 2) {
                    vf = static_cast<int>(fi);
                    attach = g;
                    ext1 = exts[0];
                    ext2 = exts[1];
                    need_identify = true;
                    break;
                }
            }
        }
        if (vf < 0) {
            res.status = ReflectionResult::Status::converged;
            res.iterations = iter;
            break;
        }
        if (iter == cap) {
            res.iterations = iter;
            res.status = ReflectionResult::Status::cap_exceeded;
            break;
        }

        Graph next;
        std::vector<int> proj;  // current -> next
        if (need_glue) {
            PushoutResult po = pushout(s[vf], attach);
            next = po.graph;
            proj = po.inj_c.map;
        } else {
            detail::UnionFind uf(current.n);
            for (int v = 0; v < ext1.dom.n; ++v) uf.unite(ext1.map[v], ext2.map[v]);
            auto [q, pm] = detail::quotient(current, uf, "refl");
            next = std::move(q);
            proj = std::move(pm);
        }
        (void)need_identify;
        if (next.n > max_vertices)
            throw GuardExceeded("reflect: vertex guard exceeded at iteration " +
                                std::to_string(iter));
        // a step that changes nothing would contradict the violation it fixes
        if (next == current) {
            bool proj_id = true;
            for (int v = 0; v < current.n; ++v)
                if (proj[v] != v) proj_id = false;
            if (proj_id) throw Error("reflect: step made no progress");
        }
        for (int& e : eta) e = proj[e];
        ReflectionStep step;
        step.f_index = vf;
        step.kind = need_glue ? "glue" : "identify";
        step.attach_map = attach.map;
        step.vertices_after = next.n;
        step.arcs_after = static_cast<long long>(next.arcs.size());
        res.trace.push_back(std::move(step));
        current = std::move(next);
    }

    res.lx = current;
    res.eta = GraphHom::make(x, res.lx, std::move(eta));
    if (res.status == ReflectionResult::Status::converged) {
        for (const GraphHom& f : s)
            if (!is_orthogonal(f, res.lx))
                throw Error("reflect: converged result fails orthogonality re-check");
    }
    return res;
}

}  // namespace homforge
