#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "homforge/int_matrix.hpp"
#include "homforge/lattice.hpp"
#include "oracles.hpp"

using namespace homforge;

namespace {

// Laplace-expansion determinant; independent of the library's Bareiss path.
Int laplace_det(const IntMatrix& m, std::vector<int> rows, std::vector<int> cols) {
    if (rows.empty()) return 1;
    Int acc = 0;
    int sign = 1;
    for (size_t i = 0; i < rows.size(); ++i) {
        std::vector<int> r2;
        for (size_t k = 0; k < rows.size(); ++k)
            if (k != i) r2.push_back(rows[k]);
        std::vector<int> c2(cols.begin() + 1, cols.end());
        acc += sign * m.at(rows[i], cols[0]) * laplace_det(m, r2, c2);
        sign = -sign;
    }
    return acc;
}

// Invariant factors from gcds of k x k minors.
std::vector<Int> minor_gcd_invariant_factors(const IntMatrix& m) {
    int r = std::min(m.rows, m.cols);
    std::vector<Int> g(r + 1, 0);
    g[0] = 1;
    for (int k = 1; k <= r; ++k) {
        Int acc = 0;
        std::vector<int> rows(k), cols(k);
        std::function<void(int, int)> pick_rows = [&](int start, int depth) {
            if (depth == k) {
                std::function<void(int, int)> pick_cols = [&](int cstart, int cdepth) {
                    if (cdepth == k) {
                        acc = int_gcd(acc, laplace_det(m, rows, cols));
                        return;
                    }
                    for (int c = cstart; c < m.cols; ++c) {
                        cols[cdepth] = c;
                        pick_cols(c + 1, cdepth + 1);
                    }
                };
                pick_cols(0, 0);
                return;
            }
            for (int i = start; i < m.rows; ++i) {
                rows[depth] = i;
                pick_rows(i + 1, depth + 1);
            }
        };
        pick_rows(0, 0);
        g[k] = int_abs(acc);
    }
    std::vector<Int> d;
    for (int k = 1; k <= r; ++k) {
        if (g[k] == 0) {
            d.push_back(0);
            continue;
        }
        d.push_back(g[k] / g[k - 1]);
    }
    return d;
}

IntMatrix random_matrix(std::mt19937& rng, int r, int c, int bound) {
    IntMatrix m(r, c);
    std::uniform_int_distribution<int> dist(-bound, bound);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) m.at(i, j) = dist(rng);
    return m;
}

SparseVec dense_to_sparse(const std::vector<long long>& v) {
    SparseVec s;
    for (size_t i = 0; i < v.size(); ++i)
        if (v[i]) s.push_back({(long long)i, Int(v[i])});
    return s;
}

}  // namespace

TEST_CASE("smith normal form worked examples") {
    IntMatrix m = IntMatrix::from_rows({{2, 0}, {0, 3}});
    SNFResult s = smith_normal_form(m);
    CHECK(s.D.at(0, 0) == 1);
    CHECK(s.D.at(1, 1) == 6);
    CHECK(verify_snf(m, s));

    IntMatrix z(3, 2);
    SNFResult sz = smith_normal_form(z);
    CHECK(sz.rank == 0);
    CHECK(verify_snf(z, sz));

    IntMatrix id = IntMatrix::identity(4);
    SNFResult si = smith_normal_form(id);
    for (int i = 0; i < 4; ++i) CHECK(si.D.at(i, i) == 1);
    CHECK(verify_snf(id, si));
}

TEST_CASE("smith normal form against the minor-gcd oracle") {
    std::mt19937 rng(42);
    for (int t = 0; t < 60; ++t) {
        int r = 1 + static_cast<int>(rng() % 3);
        int c = 1 + static_cast<int>(rng() % 4);
        IntMatrix m = random_matrix(rng, r, c, 6);
        SNFResult s = smith_normal_form(m);
        REQUIRE(verify_snf(m, s));
        std::vector<Int> want = minor_gcd_invariant_factors(m);
        for (int k = 0; k < std::min(r, c); ++k) CHECK(s.D.at(k, k) == want[k]);
    }
}

TEST_CASE("kernel basis solves the homogeneous system") {
    std::mt19937 rng(43);
    for (int t = 0; t < 40; ++t) {
        IntMatrix m = random_matrix(rng, 2 + rng() % 2, 4, 4);
        IntMatrix k = kernel_basis(m);
        IntMatrix prod = m.mul(k);
        for (auto& x : prod.a) CHECK(x == 0);
        SNFResult sm = smith_normal_form(m);
        CHECK(k.cols == m.cols - sm.rank);
    }
}

TEST_CASE("lattice membership and coordinates roundtrip") {
    Lattice l = Lattice::from_matrix(IntMatrix::from_rows({{2, 4, 0}, {0, 6, 2}}));
    CHECK(l.rank() == 2);
    CHECK(contains({{0, Int(2)}, {1, Int(4)}}, l));
    CHECK(contains({}, l));
    CHECK_FALSE(contains({{0, Int(1)}, {1, Int(2)}}, l));

    std::mt19937 rng(44);
    for (int t = 0; t < 50; ++t) {
        IntMatrix gens = random_matrix(rng, 3, 5, 5);
        Lattice lat = Lattice::from_matrix(gens);
        // random integer combinations are members; coordinates reproduce them
        std::vector<Int> combo(5, Int(0));
        SparseVec v;
        for (int i = 0; i < gens.rows; ++i) {
            Int c = static_cast<int>(rng() % 7) - 3;
            for (int j = 0; j < 5; ++j)
                if (gens.at(i, j) != 0) v.push_back({j, c * gens.at(i, j)});
        }
        sv_normalize(v);
        auto coords = member(v, lat);
        REQUIRE(coords.has_value());
        SparseVec back;
        for (int i = 0; i < lat.rank(); ++i)
            back = sv_add_scaled(back, lat.basis()[i], (*coords)[i]);
        CHECK(back == v);
    }
}

TEST_CASE("member detects dimension mismatch") {
    Lattice l = Lattice::from_matrix(IntMatrix::from_rows({{1, 0}}));
    CHECK_THROWS_AS(member({{5, Int(1)}}, l), DimensionError);
}

TEST_CASE("saturate worked examples") {
    Lattice l1 = Lattice::from_matrix(IntMatrix::from_rows({{2, 4}}));
    Lattice s1 = saturate(l1);
    CHECK(s1.rank() == 1);
    CHECK(contains({{0, Int(1)}, {1, Int(2)}}, s1));

    Lattice l2 = Lattice::from_matrix(IntMatrix::from_rows({{2, 0}, {0, 3}}));
    Lattice s2 = saturate(l2);
    CHECK(s2.rank() == 2);
    CHECK(contains({{0, Int(1)}}, s2));
    CHECK(contains({{1, Int(1)}}, s2));

    // idempotence and containment
    CHECK(saturate(s2) == s2);
    for (const auto& b : l2.basis()) CHECK(contains(b, s2));
}

TEST_CASE("saturate agrees with the divisibility-closure box oracle") {
    std::mt19937 rng(4242);
    std::uniform_int_distribution<int> entry(-5, 5);
    int done = 0;
    while (done < 100) {
        std::vector<oracles::Row> gens(3, oracles::Row(5));
        for (auto& row : gens)
            for (auto& x : row) x = entry(rng);
        std::vector<oracles::Row> pts = oracles::saturation_box_oracle(gens, 20);
        if (pts.empty()) continue;  // degenerate certificate; resample
        ++done;

        std::vector<SparseVec> rows;
        for (const auto& g : gens) rows.push_back(dense_to_sparse(g));
        Lattice l = Lattice::from_rows(5, rows);
        Lattice s = saturate(l);
        REQUIRE(s.rank() == l.rank());
        CHECK(is_saturated(s));
        CHECK(saturate(s) == s);
        for (const auto& b : l.basis()) REQUIRE(contains(b, s));
        // every certified box point of the span is a member
        for (const auto& p : pts) REQUIRE(contains(dense_to_sparse(p), s));
        // every basis vector of the result certifies into the rational span
        for (const auto& b : s.basis()) {
            oracles::Row dense(5, 0);
            for (const auto& [c, x] : b) {
                REQUIRE(int_abs(x) < Int(1000000));
                dense[c] = static_cast<long long>(x);
            }
            REQUIRE(oracles::span_certificate(oracles::span_basis(gens), dense));
        }
    }
}

TEST_CASE("purity detection") {
    Lattice z2 = Lattice::from_matrix(IntMatrix::identity(2));
    Lattice ax = Lattice::from_matrix(IntMatrix::from_rows({{1, 0}}));
    Lattice two = Lattice::from_matrix(IntMatrix::from_rows({{2, 0}}));
    CHECK(is_pure_in(z2, z2));
    CHECK(is_pure_in(ax, z2));
    CHECK_FALSE(is_pure_in(two, z2));
    CHECK_THROWS_AS(is_pure_in(z2, two), NotSublattice);

    // diagonal lattice of index 2: (1,1) spans a pure rank-1 sublattice
    Lattice diag = Lattice::from_matrix(IntMatrix::from_rows({{1, 1}, {0, 2}}));
    Lattice d1 = Lattice::from_matrix(IntMatrix::from_rows({{1, 1}}));
    CHECK(is_pure_in(d1, diag));
    Lattice d2 = Lattice::from_matrix(IntMatrix::from_rows({{2, 2}}));
    CHECK_FALSE(is_pure_in(d2, diag));
}

TEST_CASE("split by idempotent") {
    Lattice z2 = Lattice::from_matrix(IntMatrix::identity(2));
    IntMatrix proj = IntMatrix::from_rows({{1, 0}, {0, 0}});
    auto [a, b] = split_by_idempotent(z2, proj);
    CHECK(a.rank() == 1);
    CHECK(b.rank() == 1);
    CHECK(contains({{0, Int(1)}}, a));
    CHECK(contains({{1, Int(1)}}, b));

    auto [full, zero] = split_by_idempotent(z2, IntMatrix::identity(2));
    CHECK(full.rank() == 2);
    CHECK(zero.rank() == 0);
    auto [zero2, full2] = split_by_idempotent(z2, IntMatrix(2, 2));
    CHECK(zero2.rank() == 0);
    CHECK(full2.rank() == 2);

    IntMatrix not_idem = IntMatrix::from_rows({{0, 1}, {0, 0}});
    CHECK_THROWS(split_by_idempotent(z2, not_idem));

    // a projector with off-diagonal action
    IntMatrix slant = IntMatrix::from_rows({{1, 1}, {0, 0}});
    auto [sa, sbb] = split_by_idempotent(z2, slant);
    CHECK(sa.rank() + sbb.rank() == 2);
    CHECK(lattice_sum(sa, sbb) == z2);
}

TEST_CASE("hnf canonical basis is stable under generator order") {
    std::mt19937 rng(45);
    for (int t = 0; t < 50; ++t) {
        IntMatrix gens = random_matrix(rng, 4, 4, 5);
        std::vector<SparseVec> rows;
        for (int i = 0; i < 4; ++i) {
            SparseVec r;
            for (int j = 0; j < 4; ++j)
                if (gens.at(i, j) != 0) r.push_back({j, gens.at(i, j)});
            rows.push_back(std::move(r));
        }
        Lattice l1 = Lattice::from_rows(4, rows);
        std::shuffle(rows.begin(), rows.end(), rng);
        Lattice l2 = Lattice::from_rows(4, rows);
        CHECK(l1 == l2);
    }
}
