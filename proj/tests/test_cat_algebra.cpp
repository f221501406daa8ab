#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "homforge/cat_algebra.hpp"
#include "homforge/corpus.hpp"
#include "homforge/formal_sum.hpp"

using namespace homforge;

namespace {

MorSymbol sym(const GraphHom& h) { return MorSymbol::from_hom(canonicalize_hom(h)); }

FormalSum random_sum(std::mt19937& rng, const std::vector<MorSymbol>& pool) {
    FormalSum s;
    int k = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < k; ++i) {
        int c = static_cast<int>(rng() % 19) - 9;
        if (c == 0) c = 2;
        s.add(pool[rng() % pool.size()], c);
    }
    return s;
}

}  // namespace

TEST_CASE("formal sums never store zero coefficients") {
    Graph l2 = canonical_form(chain_graph(2)).canon;
    MorSymbol id2 = MorSymbol::identity_of(l2);
    FormalSum s(id2, 5);
    s.add(id2, -5);
    CHECK(s.is_zero());
    CHECK(support(s).empty());
    s.add(id2, 3);
    CHECK(support(s) == std::set<MorSymbol>{id2});
    CHECK(s.coeff(id2) == 3);
    FormalSum diff = s - s;
    CHECK(diff.is_zero());
}

TEST_CASE("ring multiply: units, idempotents, zero products") {
    Graph l2 = canonical_form(chain_graph(2)).canon;
    Graph l3 = canonical_form(chain_graph(3)).canon;
    MorSymbol id2 = MorSymbol::identity_of(l2);
    MorSymbol id3 = MorSymbol::identity_of(l3);
    MorSymbol phi = MorSymbol::from_hom(enumerate_homs(l2, l3)[0]);

    // id_X is idempotent
    CHECK(ring_multiply(FormalSum(id2), FormalSum(id2)) == FormalSum(id2));
    // non-composable product is zero
    CHECK(ring_multiply(FormalSum(phi), FormalSum(id3)).is_zero());
    // unit is two-sided neutral
    FormalSum a(phi, 3);
    a.add(id2, -2);
    CHECK(ring_multiply(FormalSum::unit(), a) == a);
    CHECK(ring_multiply(a, FormalSum::unit()) == a);
    // identity laws through composition
    CHECK(ring_multiply(FormalSum(id3), FormalSum(phi)) == FormalSum(phi));
    CHECK(ring_multiply(FormalSum(phi), FormalSum(id2)) == FormalSum(phi));

    // (2 phi + 3*1) * psi expands bilinearly
    MorSymbol psi =
        MorSymbol::from_hom(enumerate_homs(l3, canonical_form(chain_graph(4)).canon)[0]);
    FormalSum lhs = ring_multiply(FormalSum(psi), FormalSum(phi, 2) + FormalSum::unit(3));
    FormalSum want(*symbol_product(psi, phi), 2);
    want.add(psi, 3);
    CHECK(lhs == want);
}

TEST_CASE("ring laws on random sums over a small corpus") {
    auto corpus = canonical_corpus(2);
    std::vector<MorSymbol> pool{MorSymbol::unit_symbol()};
    for (const Graph& x : corpus)
        for (const Graph& y : corpus)
            for (const GraphHom& h : enumerate_homs(x, y)) pool.push_back(MorSymbol::from_hom(h));

    std::mt19937 rng(99);
    for (int t = 0; t < 120; ++t) {
        FormalSum a = random_sum(rng, pool);
        FormalSum b = random_sum(rng, pool);
        FormalSum c = random_sum(rng, pool);
        CHECK(ring_multiply(a, ring_multiply(b, c)) == ring_multiply(ring_multiply(a, b), c));
        CHECK(ring_multiply(a, b + c) == ring_multiply(a, b) + ring_multiply(a, c));
        CHECK(ring_multiply(a + b, c) == ring_multiply(a, c) + ring_multiply(b, c));
    }
}

TEST_CASE("hom groups have the enumerated basis") {
    Graph pt = single_vertex(false);
    HomGroup g1 = hom_group(pt, pt);
    CHECK(g1.rank() == 1);

    HomGroup g2 = hom_group(chain_graph(2), chain_graph(3));
    CHECK(g2.rank() == 3);

    // rigid graph: endomorphism group has rank 1
    HomGroup g3 = hom_group(chain_graph(4), chain_graph(4));
    CHECK(g3.rank() == 1);
    CHECK(g3.basis[0].is_identity());
}

TEST_CASE("retract witness extraction") {
    Graph l2 = canonical_form(chain_graph(2)).canon;

    // trivial self-retract
    MorSymbol id2 = MorSymbol::identity_of(l2);
    auto w0 = retract_witness(FormalSum(id2), FormalSum(id2));
    REQUIRE(w0.has_value());
    CHECK(w0->first.is_identity());
    CHECK(w0->second.is_identity());

    // L2 sits inside the 3-vertex out-star as a retract
    Graph star = Graph::make("star", 3, {{0, 1}, {0, 2}});
    GraphHom incl = GraphHom::make(l2, star, {0, 1});
    GraphHom retr = GraphHom::make(star, l2, {0, 1, 1});
    auto w = retract_witness(FormalSum(sym(incl)), FormalSum(sym(retr)));
    REQUIRE(w.has_value());
    CHECK(symbol_product(MorSymbol::from_hom(w->second), MorSymbol::from_hom(w->first))
              ->is_identity());

    // precondition violation raises
    Graph l3 = canonical_form(chain_graph(3)).canon;
    GraphHom i2 = GraphHom::make(l2, l3, {0, 1});
    GraphHom r2 = GraphHom::make(l3, l2, {0, 1, 1});
    FormalSum u(sym(i2));
    FormalSum v(sym(r2));
    REQUIRE(ring_multiply(v, u) == FormalSum(MorSymbol::identity_of(l2)));
    REQUIRE(retract_witness(u, v).has_value());
    GraphHom other = GraphHom::make(l3, l2, {0, 0, 1});
    CHECK_THROWS_AS(retract_witness(u, FormalSum(sym(other)) + v), InvalidInversePair);
}

TEST_CASE("retract witness exists whenever the precondition holds") {
    auto corpus = canonical_corpus(2);
    int found = 0;
    for (const Graph& x : corpus)
        for (const Graph& y : corpus) {
            if (y.n < x.n) continue;
            for (const GraphHom& i : enumerate_homs(x, y))
                for (const GraphHom& r : enumerate_homs(y, x)) {
                    if (!compose(r, i).is_identity()) continue;
                    auto w = retract_witness(FormalSum(sym(i)), FormalSum(sym(r)));
                    REQUIRE(w.has_value());
                    CHECK(compose(w->second, w->first).is_identity());
                    ++found;
                }
        }
    CHECK(found > 0);
}

TEST_CASE("limit comparison: single object") {
    SetDiagram d;
    d.sizes = {3};
    d.leq = {{true}};
    LimitComparison lc = limit_comparison(d);
    CHECK(lc.lim_rank == 3);
    CHECK(lc.limz_rank == 3);
    CHECK(lc.injective);
    CHECK(lc.surjective);
}

TEST_CASE("limit comparison: one arrow") {
    // poset {0 < 1}, map S_0 -> S_1; the limit is S_0
    SetDiagram d;
    d.sizes = {3, 2};
    d.leq = {{true, true}, {false, true}};
    d.maps[{0, 1}] = {0, 1, 1};
    LimitComparison lc = limit_comparison(d);
    CHECK(lc.lim_rank == 3);
    CHECK(lc.injective);
    CHECK(lc.surjective);
    CHECK(lc.iso());
}

TEST_CASE("limit comparison: empty limit") {
    SetDiagram d;
    d.sizes = {0, 2};
    d.leq = {{true, true}, {false, true}};
    d.maps[{0, 1}] = {};
    LimitComparison lc = limit_comparison(d);
    CHECK(lc.lim_rank == 0);
    CHECK(lc.injective);  // map from the zero group
}

TEST_CASE("limit comparison: cospan with minimum") {
    // 0 < 1, 0 < 2 with 1, 2 incomparable; codirected via the minimum 0
    SetDiagram d;
    d.sizes = {4, 2, 3};
    d.leq = {{true, true, true}, {false, true, false}, {false, false, true}};
    d.maps[{0, 1}] = {0, 0, 1, 1};
    d.maps[{0, 2}] = {0, 1, 2, 2};
    LimitComparison lc = limit_comparison(d);
    CHECK(lc.lim_rank == 4);
    CHECK(lc.injective);
    CHECK(lc.surjective);
}

TEST_CASE("limit comparison rejects non-codirected posets") {
    SetDiagram d;  // two incomparable objects, no lower bound
    d.sizes = {1, 1};
    d.leq = {{true, false}, {false, true}};
    CHECK_THROWS_AS(limit_comparison(d), NotCodirected);
}
