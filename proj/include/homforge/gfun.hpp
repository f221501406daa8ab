#pragma once

#include <memory>
#include <vector>

#include "homforge/corner.hpp"
#include "homforge/subgraph.hpp"

namespace homforge {

/// G_fin X at a stage: the id_X part of the stage lattice, with the image of
/// the (1, id_X) basis vector as distinguished element. Every coordinate in
/// the part carries a symbol with codomain X.
struct GSnapshot {
    StagePtr stage;
    Graph x;  // canonical
    Lattice lattice;
    SnapshotElement distinguished;
    std::shared_ptr<MemberSolver> solver;

    int rank() const { return lattice.rank(); }
};

inline GSnapshot g_object(const Graph& x_in, StagePtr stage) {
    Graph x = canonical_form(x_in).canon;
    MorSymbol idx = MorSymbol::identity_of(x);
    int sym = stage->index_of(idx);
    if (sym < 0) throw InactiveSymbol("g_object: id of " + x.id + " not active");

    GSnapshot g;
    g.stage = stage;
    g.x = std::move(x);
    g.lattice = idempotent_split(*stage, g.x).first;
    for (const auto& row : g.lattice.basis())
        for (const auto& [c, v] : row) {
            const MorSymbol& s = stage->active[stage->coord_symbol(c)];
            if (s.unit || !(s.cod == g.x))
                throw StageCorrupt("g_object: snapshot coordinate with foreign codomain");
        }
    SparseVec dist{{stage->coord(0, sym), Int(1)}};
    if (!contains(dist, g.lattice))
        throw StageCorrupt("g_object: distinguished element missing");
    g.distinguished = SnapshotElement{stage, std::move(dist)};
    g.solver = std::make_shared<MemberSolver>(g.lattice);
    return g;
}

/// Homomorphism between snapshots, stored as the images of the domain
/// lattice basis rows in ambient coordinates. Columns of a map produced by
/// gamma always lie in the codomain lattice (verified on construction).
struct SnapshotHom {
    std::vector<SparseVec> cols;

    friend bool operator==(const SnapshotHom& a, const SnapshotHom& b) {
        return a.cols == b.cols;
    }
};

inline SnapshotHom zero_snapshot_hom(const GSnapshot& gx) {
    return SnapshotHom{std::vector<SparseVec>(gx.lattice.rank())};
}

/// gamma: linear extension of left multiplication. u must be supported on
/// active symbols X -> Y.
inline SnapshotHom gamma(const FormalSum& u, const GSnapshot& gx, const GSnapshot& gy) {
    for (const auto& [s, c] : u.terms()) {
        if (s.unit || !(s.dom == gx.x) || !(s.cod == gy.x))
            throw Error("gamma: sum not supported on Hom(" + gx.x.id + "," + gy.x.id + ")");
        if (gx.stage->index_of(s) < 0) throw InactiveSymbol("gamma: symbol not active");
    }
    PreparedMultiplier mult(*gx.stage, u);
    SnapshotHom h;
    h.cols.reserve(gx.lattice.rank());
    for (const auto& b : gx.lattice.basis()) {
        SparseVec col = mult.apply(b);
        if (!gy.solver->contains(col))
            throw StageCorrupt("gamma: image column escaped the codomain snapshot");
        h.cols.push_back(std::move(col));
    }
    return h;
}

inline SnapshotHom g_morphism(const GraphHom& phi, const GSnapshot& gx, const GSnapshot& gy) {
    return gamma(FormalSum(MorSymbol::from_hom(phi)), gx, gy);
}

/// Applies a snapshot hom (defined on gx's basis) to an arbitrary element of
/// gx's lattice.
inline SparseVec apply_snapshot_hom(const SnapshotHom& h, const GSnapshot& gx,
                                    const SparseVec& v) {
    auto coords = gx.solver->solve(v);
    if (!coords) throw Error("apply_snapshot_hom: element outside the snapshot lattice");
    SparseVec out;
    for (const auto& [i, c] : *coords) out = sv_add_scaled(out, h.cols[i], c);
    return out;
}

/// Matrix composition g . f with f : GW -> GX and g : GX -> GY.
inline SnapshotHom compose_snapshot_homs(const SnapshotHom& g, const GSnapshot& gx,
                                         const SnapshotHom& f) {
    SnapshotHom out;
    for (const auto& col : f.cols) out.cols.push_back(apply_snapshot_hom(g, gx, col));
    return out;
}

/// Inverse of gamma on multiplier-induced maps: evaluates h at the
/// distinguished element, reads the degree-0 coordinates over Hom(X,Y)
/// symbols, and verifies h = gamma(u) across the whole basis. The
/// verification is mandatory; evaluation alone cannot tell a truncated-stage
/// artifact from a genuine multiplier map.
inline FormalSum gamma_inverse(const SnapshotHom& h, const GSnapshot& gx, const GSnapshot& gy) {
    if (h.cols.size() != static_cast<size_t>(gx.lattice.rank()))
        throw DimensionError("gamma_inverse: column count mismatch");
    SparseVec image = apply_snapshot_hom(h, gx, gx.distinguished.coords);
    FormalSum u;
    for (const auto& [c, x] : image) {
        if (gx.stage->coord_monomial(c) != 0) continue;
        const MorSymbol& s = gx.stage->active[gx.stage->coord_symbol(c)];
        if (!s.unit && s.dom == gx.x && s.cod == gy.x) u.add(s, x);
    }
    SnapshotHom expect = gamma(u, gx, gy);
    for (size_t i = 0; i < h.cols.size(); ++i)
        if (!(expect.cols[i] == h.cols[i]))
            throw NotInImage("gamma_inverse: not induced by a formal sum of graph maps",
                             static_cast<int>(i));
    return u;
}

/// Full column rank of the action matrix; the computational content of mono
/// preservation.
inline bool snapshot_hom_injective(const SnapshotHom& h, const GSnapshot& gy) {
    std::vector<SparseVec> rows = h.cols;
    Lattice image = Lattice::from_rows(gy.lattice.ambient(), std::move(rows));
    return image.rank() == static_cast<int>(h.cols.size());
}

/// Directed colimit of subgraph snapshots inside the ambient stage, compared
/// against g_object(X). With the top element present the comparison is an
/// isomorphism; families missing the top land in a proper sublattice.
struct ColimitResult {
    GSnapshot full;       // g_object(X)
    Lattice colimit;      // sum of the images of the subgraph snapshots
    bool comparison_iso = false;
    int rank_colimit = 0, rank_full = 0;
};

inline ColimitResult colimit_assemble(const Graph& x_in, const SubgraphPoset& p,
                                      StagePtr stage, bool require_cofinal = true) {
    Graph x = canonical_form(x_in).canon;
    if (!(canonical_form(p.ambient).canon == x))
        throw Error("colimit_assemble: poset ambient differs from X");
    CanonResult cx = canonical_form(p.ambient);

    bool has_top = false;
    for (const auto& el : p.elements)
        if (el.graph == p.ambient &&
            el.vertex_mask == (p.ambient.n >= 32 ? ~0u : (1u << p.ambient.n) - 1) &&
            el.arc_mask + 1 == (1ull << p.ambient.arcs.size()))
            has_top = true;
    if (require_cofinal && !has_top)
        throw Error("colimit_assemble: poset is not cofinal (missing the top element)");

    ColimitResult out;
    out.full = g_object(x, stage);

    std::vector<SparseVec> rows;
    for (const auto& el : p.elements) {
        CanonResult cc = canonical_form(el.graph);
        // canonical-level map C~ -> X~ through the inclusion
        std::vector<int> inv(el.graph.n);
        for (int v = 0; v < el.graph.n; ++v) inv[cc.iso.map[v]] = v;
        std::vector<int> m(el.graph.n);
        for (int pvert = 0; pvert < el.graph.n; ++pvert)
            m[pvert] = cx.iso.map[el.vertex_map[inv[pvert]]];
        MorSymbol psi = MorSymbol::from_hom(GraphHom::make(cc.canon, x, std::move(m)));
        if (stage->index_of(psi) < 0)
            throw InactiveSymbol("colimit_assemble: inclusion symbol not active: " + psi.label());
        GSnapshot gc = g_object(cc.canon, stage);
        PreparedMultiplier mult(*stage, FormalSum(psi));
        for (const auto& b : gc.lattice.basis()) rows.push_back(mult.apply(b));
    }
    out.colimit = Lattice::from_rows(stage->ambient_dim, std::move(rows));
    out.rank_colimit = out.colimit.rank();
    out.rank_full = out.full.lattice.rank();
    out.comparison_iso = (out.colimit == out.full.lattice);
    return out;
}

}  // namespace homforge
