#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "homforge/formal_sum.hpp"
#include "homforge/lattice.hpp"

namespace homforge {

/// Formal transcendental marker z_a or w_a attached to a non-unit basis
/// symbol a. Distinct monomials in these markers span independent ambient
/// directions; that is the whole model of algebraic independence here, and it
/// is what makes the purity computations exact.
struct TransMarker {
    enum Kind { Z, W };
    Kind kind;
    MorSymbol tag;
};

/// Integer polynomial in the markers, read off a stage element symbol-wise.
/// Keys are sorted marker-id vectors; the empty monomial is the constant 1.
using PolyCoef = std::map<std::vector<int>, Int>;

/// Degree-capped symbolic model of Corner's group: the saturated lattice
/// generated by the algebra span {1*s} together with the rows a'*e_a, where
/// e_a = z_a*1 + w_a*a ranges over the non-unit basis symbols of the active
/// set. Ambient coordinates are pairs (monomial of degree <= cap, symbol),
/// indexed monomial-major.
struct CornerStage {
    std::vector<MorSymbol> active;  // sorted; active[0] is the unit
    int degree_cap = 1;
    std::vector<std::vector<int>> prod;  // prod[i][j] = index of active[i]*active[j], -1 if zero
    long long num_markers = 0;           // 2 per non-unit symbol
    long long num_monomials = 0;
    long long ambient_dim = 0;
    Lattice lattice;                     // saturated
    std::vector<SparseVec> generator_log;
    bool truncated = false;

    int symbols() const { return static_cast<int>(active.size()); }

    int index_of(const MorSymbol& s) const {
        auto it = std::lower_bound(active.begin(), active.end(), s);
        if (it == active.end() || !(*it == s)) return -1;
        return static_cast<int>(it - active.begin());
    }

    // markers of non-unit symbol k (k >= 1): z = 2(k-1), w = 2(k-1)+1
    int marker_z(int sym_idx) const { return 2 * (sym_idx - 1); }
    int marker_w(int sym_idx) const { return 2 * (sym_idx - 1) + 1; }

    TransMarker marker(int marker_id) const {
        TransMarker m;
        m.kind = (marker_id % 2 == 0) ? TransMarker::Z : TransMarker::W;
        m.tag = active[marker_id / 2 + 1];
        return m;
    }

    long long binom(long long n, long long k) const {
        if (k < 0 || n < 0 || k > n) return 0;
        long long r = 1;
        for (long long i = 1; i <= k; ++i) {
            r = r * (n - k + i);
            if (r < 0) throw GuardExceeded("corner stage: index overflow");
            r /= i;
        }
        return r;
    }

    long long monomials_of_degree(int d) const { return binom(num_markers + d - 1, d); }

    /// Graded colex rank of a sorted marker multiset.
    long long mono_rank(const std::vector<int>& mono) const {
        int d = static_cast<int>(mono.size());
        if (d > degree_cap) throw Error("corner stage: monomial exceeds the degree cap");
        long long r = 0;
        for (int k = 0; k < d; ++k) r += monomials_of_degree(k);
        for (int i = 0; i < d; ++i) r += binom(mono[i] + i, i + 1);
        return r;
    }

    std::vector<int> mono_unrank(long long rank) const {
        int d = 0;
        while (rank >= monomials_of_degree(d)) {
            rank -= monomials_of_degree(d);
            ++d;
        }
        std::vector<int> combo(d);
        for (int i = d; i >= 1; --i) {
            long long c = i - 1;
            while (binom(c + 1, i) <= rank) ++c;
            combo[i - 1] = static_cast<int>(c);
            rank -= binom(c, i);
        }
        for (int i = 0; i < d; ++i) combo[i] -= i;  // back from combination to multiset
        return combo;
    }

    long long coord(long long mono, int sym) const { return mono * symbols() + sym; }
    long long coord_monomial(long long c) const { return c / symbols(); }
    int coord_symbol(long long c) const { return static_cast<int>(c % symbols()); }
};

using StagePtr = std::shared_ptr<const CornerStage>;

/// Element of a stage: an ambient coordinate vector known to lie in the
/// stage lattice.
struct SnapshotElement {
    StagePtr stage;
    SparseVec coords;

    friend bool operator==(const SnapshotElement& a, const SnapshotElement& b) {
        return a.coords == b.coords;
    }
};

/// Closes a symbol set under composition, identities of endpoints, and the
/// unit. Convenience for callers; build_stage itself only validates.
inline std::vector<MorSymbol> close_active_set(std::vector<MorSymbol> symbols) {
    std::set<MorSymbol> s(symbols.begin(), symbols.end());
    s.insert(MorSymbol::unit_symbol());
    for (const MorSymbol& m : symbols) {
        if (m.unit) continue;
        s.insert(MorSymbol::identity_of(m.dom));
        s.insert(MorSymbol::identity_of(m.cod));
    }
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<MorSymbol> cur(s.begin(), s.end());
        for (const MorSymbol& a : cur)
            for (const MorSymbol& b : cur) {
                auto p = symbol_product(a, b);
                if (p && s.insert(*p).second) grew = true;
            }
    }
    return {s.begin(), s.end()};
}

/// Builds the stage over a composition-closed active set. The generator
/// recipe is {(1,s)} plus every degree-truncated a'*e_a; the lattice is the
/// saturation of their span, so the stage is pure in its ambient by
/// construction.
inline StagePtr build_stage(std::vector<MorSymbol> active_in, int degree_cap) {
    if (degree_cap < 1) throw Error("build_stage: degree cap must be >= 1");
    auto stage = std::make_shared<CornerStage>();
    std::set<MorSymbol> aset(active_in.begin(), active_in.end());
    if (!aset.count(MorSymbol::unit_symbol()))
        throw ClosureError("build_stage: active set must contain the unit");
    stage->active.assign(aset.begin(), aset.end());
    stage->degree_cap = degree_cap;

    int s = stage->symbols();
    // identities of all endpoints must be present
    for (const MorSymbol& m : stage->active) {
        if (m.unit) continue;
        if (!aset.count(MorSymbol::identity_of(m.dom)) ||
            !aset.count(MorSymbol::identity_of(m.cod)))
            throw ClosureError("build_stage: active set missing identity of " + m.dom.id +
                               " or " + m.cod.id);
    }
    stage->prod.assign(s, std::vector<int>(s, -1));
    for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j) {
            auto p = symbol_product(stage->active[i], stage->active[j]);
            if (!p) continue;
            int k = stage->index_of(*p);
            if (k < 0)
                throw ClosureError("build_stage: active set not closed under composition: " +
                                   stage->active[i].label() + " * " + stage->active[j].label());
            stage->prod[i][j] = k;
        }

    stage->num_markers = 2ll * (s - 1);
    stage->num_monomials = 0;
    for (int d = 0; d <= degree_cap; ++d) stage->num_monomials += stage->monomials_of_degree(d);
    stage->ambient_dim = stage->num_monomials * s;
    if (stage->ambient_dim > (1ll << 50)) throw GuardExceeded("build_stage: ambient too large");

    std::vector<SparseVec> gens;
    for (int i = 0; i < s; ++i) gens.push_back({{stage->coord(0, i), Int(1)}});
    for (int a = 1; a < s; ++a) {
        long long zm = stage->mono_rank({stage->marker_z(a)});
        long long wm = stage->mono_rank({stage->marker_w(a)});
        for (int ap = 0; ap < s; ++ap) {
            SparseVec g;
            g.push_back({stage->coord(zm, ap), Int(1)});
            int p = stage->prod[ap][a];
            if (p >= 0) g.push_back({stage->coord(wm, p), Int(1)});
            sv_normalize(g);
            gens.push_back(std::move(g));
        }
    }
    stage->generator_log = gens;
    stage->lattice = saturate(Lattice::from_rows(stage->ambient_dim, std::move(gens)));
    return stage;
}

/// Precomputed coordinate action of left multiplication by a fixed sum:
/// for each symbol s the (target symbol, coefficient) pairs of a*s. Built
/// once, applied per vector; the action never touches monomial degrees.
class PreparedMultiplier {
public:
    PreparedMultiplier(const CornerStage& stage, const FormalSum& a) : stage_(stage) {
        table_.resize(stage.symbols());
        for (const auto& [sym, c] : a.terms()) {
            int i = stage.index_of(sym);
            if (i < 0) throw InactiveSymbol("left_multiply: symbol not active: " + sym.label());
            for (int s = 0; s < stage.symbols(); ++s) {
                int p = stage.prod[i][s];
                if (p >= 0) table_[s].push_back({p, c});
            }
        }
        for (auto& row : table_)
            std::sort(row.begin(), row.end(),
                      [](const auto& a_, const auto& b_) { return a_.first < b_.first; });
    }

    SparseVec apply(const SparseVec& v) const {
        SparseVec out;
        out.reserve(v.size() * 2);
        for (const auto& [c, x] : v) {
            long long mono = stage_.coord_monomial(c);
            int sym = stage_.coord_symbol(c);
            for (const auto& [p, k] : table_[sym]) out.push_back({stage_.coord(mono, p), k * x});
        }
        sv_normalize(out);
        return out;
    }

private:
    const CornerStage& stage_;
    std::vector<std::vector<std::pair<int, Int>>> table_;
};

/// Coordinate action of left multiplication: (m, s) -> (m, a*s).
inline SparseVec left_multiply_vec(const CornerStage& stage, const FormalSum& a,
                                   const SparseVec& v) {
    return PreparedMultiplier(stage, a).apply(v);
}

/// Checked action on stage elements; a result escaping the lattice means the
/// stage is corrupt and raises StageCorrupt rather than re-saturating.
inline SnapshotElement left_multiply(const FormalSum& a, const SnapshotElement& v) {
    SparseVec out = left_multiply_vec(*v.stage, a, v.coords);
    if (!contains(out, v.stage->lattice))
        throw StageCorrupt("left_multiply: result escaped the stage lattice");
    return SnapshotElement{v.stage, std::move(out)};
}

/// Endomorphism of a stage, given by the images of the lattice basis rows.
using StageEndo = std::vector<SparseVec>;

inline StageEndo endo_of_multiplier(const CornerStage& stage, const FormalSum& a) {
    PreparedMultiplier mult(stage, a);
    StageEndo h;
    h.reserve(stage.lattice.rank());
    for (const auto& b : stage.lattice.basis()) h.push_back(mult.apply(b));
    return h;
}

/// Recovers the unique multiplier realizing h as left multiplication, by
/// evaluating at the element (1, UNIT) and reading the degree-0 coordinates.
/// A verification pass over the whole basis guards against maps that are not
/// multiplier-induced; its first mismatch is reported as a witness.
inline FormalSum recover_multiplier(const CornerStage& stage, const StageEndo& h) {
    if (static_cast<int>(h.size()) != stage.lattice.rank())
        throw DimensionError("recover_multiplier: endo arity mismatch");
    SparseVec unit_elem{{stage.coord(0, 0), Int(1)}};
    auto coords = member(unit_elem, stage.lattice);
    if (!coords) throw StageCorrupt("recover_multiplier: unit element missing from lattice");
    SparseVec image;
    for (int i = 0; i < stage.lattice.rank(); ++i)
        if ((*coords)[i] != 0) image = sv_add_scaled(image, h[i], (*coords)[i]);
    FormalSum a;
    for (const auto& [c, x] : image) {
        if (stage.coord_monomial(c) != 0) continue;
        a.add(stage.active[stage.coord_symbol(c)], x);
    }
    PreparedMultiplier mult(stage, a);
    for (int i = 0; i < stage.lattice.rank(); ++i) {
        SparseVec expect = mult.apply(stage.lattice.basis()[i]);
        if (expect != h[i])
            throw NotLeftMultiplication(
                "recover_multiplier: endomorphism is not left multiplication", i);
    }
    return a;
}

/// Splits the stage lattice by the idempotent id_X:
/// (image of id_X, image of 1 - id_X).
inline std::pair<Lattice, Lattice> idempotent_split(const CornerStage& stage, const Graph& x) {
    MorSymbol idx = MorSymbol::identity_of(x);
    if (stage.index_of(idx) < 0)
        throw InactiveSymbol("idempotent_split: id of " + x.id + " not active");
    PreparedMultiplier mult(stage, FormalSum(idx));
    return split_by_idempotent_fn(stage.lattice,
                                  [&](const SparseVec& v) { return mult.apply(v); });
}

/// Coordinate inclusion of a stage into an extension (more symbols and/or a
/// higher cap). Old markers follow their symbols.
struct StageInclusion {
    StagePtr from, to;

    SparseVec map_vec(const SparseVec& v) const {
        SparseVec out;
        for (const auto& [c, x] : v) {
            std::vector<int> mono = from->mono_unrank(from->coord_monomial(c));
            for (int& m : mono) {
                TransMarker tm = from->marker(m);
                int k = to->index_of(tm.tag);
                if (k < 1) throw Error("stage inclusion: marker symbol missing upstream");
                m = (tm.kind == TransMarker::Z) ? to->marker_z(k) : to->marker_w(k);
            }
            std::sort(mono.begin(), mono.end());
            int sym = to->index_of(from->active[from->coord_symbol(c)]);
            if (sym < 0) throw Error("stage inclusion: symbol missing upstream");
            out.push_back({to->coord(to->mono_rank(mono), sym), x});
        }
        sv_normalize(out);
        return out;
    }

    SnapshotElement map_element(const SnapshotElement& v) const {
        SparseVec out = map_vec(v.coords);
        if (!contains(out, to->lattice))
            throw StageCorrupt("stage inclusion: image escaped the extended lattice");
        return SnapshotElement{to, std::move(out)};
    }
};

/// Extends a stage by more active symbols and/or a larger cap. The old
/// lattice embeds coordinate-wise into the new one (verified), and the
/// inclusion commutes with left multiplication by old multipliers.
inline std::pair<StagePtr, StageInclusion> stage_extend(StagePtr stage,
                                                        const std::vector<MorSymbol>& more,
                                                        int new_cap) {
    if (new_cap < stage->degree_cap) throw Error("stage_extend: cap may not decrease");
    std::vector<MorSymbol> active = stage->active;
    active.insert(active.end(), more.begin(), more.end());
    StagePtr bigger = build_stage(std::move(active), new_cap);
    StageInclusion inc{stage, bigger};
    for (const auto& b : stage->lattice.basis())
        if (!contains(inc.map_vec(b), bigger->lattice))
            throw StageCorrupt("stage_extend: old lattice does not embed");
    return {bigger, inc};
}

/// Reads a stage element as its unique presentation sum_sigma (poly in the
/// markers) * sigma over the active symbols.
inline std::map<MorSymbol, PolyCoef> snapshot_presentation(const CornerStage& stage,
                                                           const SparseVec& v) {
    std::map<MorSymbol, PolyCoef> out;
    for (const auto& [c, x] : v) {
        const MorSymbol& sym = stage.active[stage.coord_symbol(c)];
        out[sym][stage.mono_unrank(stage.coord_monomial(c))] += x;
    }
    return out;
}

inline SparseVec element_from_presentation(const CornerStage& stage,
                                           const std::map<MorSymbol, PolyCoef>& pres) {
    SparseVec v;
    for (const auto& [sym, poly] : pres) {
        int s = stage.index_of(sym);
        if (s < 0) throw InactiveSymbol("presentation symbol not active");
        for (const auto& [mono, x] : poly)
            if (x != 0) v.push_back({stage.coord(stage.mono_rank(mono), s), x});
    }
    sv_normalize(v);
    return v;
}

}  // namespace homforge
