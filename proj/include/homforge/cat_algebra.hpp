#pragma once

#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "homforge/formal_sum.hpp"
#include "homforge/hom_search.hpp"
#include "homforge/int_matrix.hpp"
#include "homforge/lattice.hpp"

namespace homforge {

/// Free abelian group Z[Hom(X,Y)] with its canonical hom basis. Inputs are
/// canonicalized on entry.
struct HomGroup {
    Graph x, y;                   // canonical representatives
    std::vector<GraphHom> basis;  // enumerate_homs order

    int rank() const { return static_cast<int>(basis.size()); }

    FormalSum element(const std::vector<Int>& coeffs) const {
        if (coeffs.size() != basis.size()) throw DimensionError("HomGroup::element size");
        FormalSum s;
        for (size_t i = 0; i < basis.size(); ++i) s.add(MorSymbol::from_hom(basis[i]), coeffs[i]);
        return s;
    }

    int index_of(const GraphHom& h) const {
        for (size_t i = 0; i < basis.size(); ++i)
            if (basis[i].map == h.map) return static_cast<int>(i);
        return -1;
    }

    /// Deterministic random element: support of bounded size, coefficients in
    /// [-9,9] \ {0}.
    FormalSum random_element(std::mt19937_64& rng, int max_support = 4) const {
        FormalSum s;
        if (basis.empty()) return s;
        std::uniform_int_distribution<int> pick(0, rank() - 1);
        std::uniform_int_distribution<int> coeff(-9, 9);
        int k = 1 + static_cast<int>(rng() % std::min<size_t>(max_support, basis.size()));
        for (int i = 0; i < k; ++i) {
            int c = coeff(rng);
            if (c == 0) c = 1;
            s.add(MorSymbol::from_hom(basis[pick(rng)]), c);
        }
        return s;
    }
};

inline HomGroup hom_group(const Graph& x, const Graph& y) {
    Graph cx = canonical_form(x).canon;
    Graph cy = canonical_form(y).canon;
    HomGroup g;
    g.basis = enumerate_homs(cx, cy);
    g.x = std::move(cx);
    g.y = std::move(cy);
    return g;
}

/// Retract extraction: given u over Hom(X,Y) and v over Hom(Y,X) with
/// v*u = id_X in the category algebra, some pair (sigma, tau) from their
/// supports composes to id_X through Y; this returns the first such pair in
/// canonical order. Throws InvalidInversePair when the precondition fails.
inline std::optional<std::pair<GraphHom, GraphHom>> retract_witness(const FormalSum& u,
                                                                    const FormalSum& v) {
    FormalSum prod = ring_multiply(v, u);
    bool ok = prod.size() == 1;
    if (ok) {
        const auto& [sym, c] = *prod.terms().begin();
        ok = c == 1 && sym.is_identity();
    }
    if (!ok)
        throw InvalidInversePair("retract_witness: v*u is not an identity symbol");
    for (const auto& [sigma, cu] : u.terms()) {
        if (sigma.unit) continue;
        for (const auto& [tau, cv] : v.terms()) {
            if (tau.unit) continue;
            auto comp = symbol_product(tau, sigma);  // tau after sigma: X -> X
            if (comp && comp->is_identity()) return std::make_pair(sigma.hom(), tau.hom());
        }
    }
    return std::nullopt;  // unreachable when the precondition holds
}

/// Finite diagram of finite sets over a poset. leq is the full order
/// relation; maps are given for every related pair i < j.
struct SetDiagram {
    std::vector<int> sizes;
    std::vector<std::vector<bool>> leq;  // leq[i][j]: i <= j
    std::map<std::pair<int, int>, std::vector<int>> maps;  // (i,j) with i<j in poset: S_i -> S_j

    int objects() const { return static_cast<int>(sizes.size()); }

    const std::vector<int>& map_of(int i, int j) const {
        auto it = maps.find({i, j});
        if (it == maps.end()) throw Error("SetDiagram: missing map");
        return it->second;
    }

    void validate() const {
        int n = objects();
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (i == j || !leq[i][j]) continue;
                const auto& f = map_of(i, j);
                if (static_cast<int>(f.size()) != sizes[i]) throw Error("SetDiagram: map arity");
                for (int s : f)
                    if (s < 0 || s >= sizes[j]) throw Error("SetDiagram: map out of range");
            }
        // functoriality on composable triples
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    if (i == j || j == k || i == k) continue;
                    if (!(leq[i][j] && leq[j][k])) continue;
                    if (!leq[i][k]) throw Error("SetDiagram: order not transitive");
                    const auto &f = map_of(i, j), &g = map_of(j, k), &h = map_of(i, k);
                    for (int s = 0; s < sizes[i]; ++s)
                        if (g[f[s]] != h[s]) throw Error("SetDiagram: maps not functorial");
                }
    }

    /// Minimum element; a finite codirected poset has one.
    int minimum() const {
        int n = objects();
        for (int m = 0; m < n; ++m) {
            bool below_all = true;
            for (int i = 0; i < n; ++i)
                if (i != m && !leq[m][i]) {
                    below_all = false;
                    break;
                }
            if (below_all) return m;
        }
        throw NotCodirected("SetDiagram: poset has no minimum, not codirected");
    }
};

/// Comparison map lambda : Z[lim S_i] -> lim Z[S_i] for a finite codirected
/// diagram, with injectivity and surjectivity computed, not assumed.
struct LimitComparison {
    std::vector<std::vector<int>> limit_elements;  // compatible tuples
    int lim_rank = 0;    // rank of Z[lim S]
    int limz_rank = 0;   // rank of lim Z[S_i]
    IntMatrix lambda;    // limz coordinates of each limit-tuple generator
    bool injective = false;
    bool surjective = false;
    bool iso() const { return injective && surjective; }
};

inline LimitComparison limit_comparison(const SetDiagram& d) {
    d.validate();
    int m = d.minimum();
    int n = d.objects();

    // lim of sets: a compatible family is determined by its minimum slot
    LimitComparison out;
    for (int s = 0; s < d.sizes[m]; ++s) {
        std::vector<int> tuple(n, -1);
        tuple[m] = s;
        for (int i = 0; i < n; ++i)
            if (i != m) tuple[i] = d.map_of(m, i)[s];
        bool compatible = true;  // functoriality makes this hold; checked anyway
        for (int i = 0; i < n && compatible; ++i)
            for (int j = 0; j < n && compatible; ++j) {
                if (i == j || !d.leq[i][j]) continue;
                if (d.map_of(i, j)[tuple[i]] != tuple[j]) compatible = false;
            }
        if (compatible) out.limit_elements.push_back(std::move(tuple));
    }
    out.lim_rank = static_cast<int>(out.limit_elements.size());

    // lim Z[S_i] inside the product: integer kernel of the compatibility map
    std::vector<int> offset(n + 1, 0);
    for (int i = 0; i < n; ++i) offset[i + 1] = offset[i] + d.sizes[i];
    int total = offset[n];
    std::vector<std::vector<Int>> eqs;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j || !d.leq[i][j]) continue;
            const auto& f = d.map_of(i, j);
            for (int t = 0; t < d.sizes[j]; ++t) {
                std::vector<Int> row(total, Int(0));
                row[offset[j] + t] = -1;
                for (int s = 0; s < d.sizes[i]; ++s)
                    if (f[s] == t) row[offset[i] + s] += 1;
                eqs.push_back(std::move(row));
            }
        }
    IntMatrix a(static_cast<int>(eqs.size()), total);
    for (size_t r = 0; r < eqs.size(); ++r)
        for (int c = 0; c < total; ++c) a.at(static_cast<int>(r), c) = eqs[r][c];
    IntMatrix kb = kernel_basis(a);  // columns span lim Z[S_i]
    out.limz_rank = kb.cols;

    std::vector<SparseVec> kernel_rows;
    for (int j = 0; j < kb.cols; ++j) {
        SparseVec r;
        for (int i = 0; i < kb.rows; ++i)
            if (kb.at(i, j) != 0) r.push_back({i, kb.at(i, j)});
        kernel_rows.push_back(std::move(r));
    }
    Lattice kernel = Lattice::from_rows(total, kernel_rows);

    // lambda sends a limit tuple to its indicator family
    out.lambda = IntMatrix(out.limz_rank, out.lim_rank);
    std::vector<SparseVec> image_rows;
    for (int k = 0; k < out.lim_rank; ++k) {
        SparseVec fam;
        for (int i = 0; i < n; ++i) fam.push_back({offset[i] + out.limit_elements[k][i], Int(1)});
        sv_normalize(fam);
        auto coords = member(fam, kernel);
        if (!coords) throw Error("limit_comparison: indicator family escapes the limit lattice");
        for (int r = 0; r < out.limz_rank; ++r) out.lambda.at(r, k) = (*coords)[r];
        image_rows.push_back(std::move(fam));
    }

    Lattice image = Lattice::from_rows(total, image_rows);
    out.injective = image.rank() == out.lim_rank;
    out.surjective = (image == kernel);  // image lattice fills lim Z[S_i] exactly
    return out;
}

}  // namespace homforge
