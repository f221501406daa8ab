// Test-only oracles, independent of the library's own linear algebra paths.
#pragma once

#include <array>
#include <cstdint>
#include <numeric>
#include <vector>

#include "homforge/graph.hpp"

namespace homforge::oracles {

// All homs X -> Y by filtering every vertex map, in lexicographic order.
inline std::vector<std::vector<int>> brute_homs(const Graph& x, const Graph& y) {
    std::vector<std::vector<int>> out;
    if (x.n == 0) {
        out.push_back({});
        return out;
    }
    if (y.n == 0) return out;
    std::vector<int> m(x.n, 0);
    while (true) {
        if (GraphHom::valid(x, y, m)) out.push_back(m);
        int i = x.n - 1;
        while (i >= 0 && m[i] == y.n - 1) {
            m[i] = 0;
            --i;
        }
        if (i < 0) break;
        ++m[i];
    }
    return out;
}

// ---------------------------------------------------------------------------
// Saturation box oracle. Everything below runs in plain int64 with explicit
// Cramer certificates; none of the library's HNF/SNF code is involved.

using Row = std::vector<long long>;

inline long long det3(const std::vector<Row>& m) {  // up to 3x3
    size_t r = m.size();
    if (r == 0) return 1;
    if (r == 1) return m[0][0];
    if (r == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

inline std::vector<Row> adjugate(const std::vector<Row>& m) {  // up to 3x3
    size_t r = m.size();
    std::vector<Row> a(r, Row(r, 0));
    if (r == 1) {
        a[0][0] = 1;
        return a;
    }
    if (r == 2) {
        a[0][0] = m[1][1];
        a[0][1] = -m[0][1];
        a[1][0] = -m[1][0];
        a[1][1] = m[0][0];
        return a;
    }
    for (size_t i = 0; i < 3; ++i)
        for (size_t j = 0; j < 3; ++j) {
            size_t r0 = (i + 1) % 3, r1 = (i + 2) % 3;
            size_t c0 = (j + 1) % 3, c1 = (j + 2) % 3;
            if (r0 > r1) std::swap(r0, r1);
            if (c0 > c1) std::swap(c0, c1);
            long long minor = m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
            long long sign = ((i + j) % 2 == 0) ? 1 : -1;
            a[j][i] = sign * minor;  // transposed cofactor
        }
    return a;
}

struct SpanBasis {
    std::vector<Row> rows;        // independent generator rows (subset of input)
    std::vector<int> pivot_cols;  // one per row
    long long det = 1;            // determinant of the pivot submatrix
    std::vector<Row> adj;         // adjugate of the pivot submatrix
};

// Greedy selection of independent rows plus a pivot-column set, via exact
// rational rank tests done with cross-multiplication.
inline SpanBasis span_basis(const std::vector<Row>& gens) {
    size_t n = gens.empty() ? 0 : gens[0].size();
    SpanBasis sb;
    for (const Row& g : gens) {
        std::vector<Row> trial = sb.rows;
        trial.push_back(g);
        // exact rank via fraction-free elimination
        std::vector<Row> m = trial;
        size_t rank = 0;
        long long prev = 1;
        for (size_t c = 0; c < n && rank < m.size(); ++c) {
            size_t pr = rank;
            while (pr < m.size() && m[pr][c] == 0) ++pr;
            if (pr == m.size()) continue;
            std::swap(m[rank], m[pr]);
            for (size_t i = rank + 1; i < m.size(); ++i) {
                for (size_t k = c + 1; k < n; ++k)
                    m[i][k] = (m[i][k] * m[rank][c] - m[i][c] * m[rank][k]) / prev;
                m[i][c] = 0;
            }
            prev = m[rank][c];
            ++rank;
        }
        if (rank == trial.size()) sb.rows = std::move(trial);
    }
    // pivot columns: greedy set of columns making the submatrix invertible
    size_t r = sb.rows.size();
    std::vector<int> cols;
    for (size_t c = 0; c < n && cols.size() < r; ++c) {
        std::vector<int> trial = cols;
        trial.push_back(static_cast<int>(c));
        std::vector<Row> sub(sb.rows.size(), Row(trial.size()));
        for (size_t i = 0; i < r; ++i)
            for (size_t j = 0; j < trial.size(); ++j) sub[i][j] = sb.rows[i][trial[j]];
        // rank of r x |trial| submatrix must equal |trial|
        size_t rank = 0;
        long long prev = 1;
        std::vector<Row> m = sub;
        for (size_t cc = 0; cc < trial.size() && rank < m.size(); ++cc) {
            size_t pr = rank;
            while (pr < m.size() && m[pr][cc] == 0) ++pr;
            if (pr == m.size()) continue;
            std::swap(m[rank], m[pr]);
            for (size_t i = rank + 1; i < m.size(); ++i) {
                for (size_t k = cc + 1; k < trial.size(); ++k)
                    m[i][k] = (m[i][k] * m[rank][cc] - m[i][cc] * m[rank][k]) / prev;
                m[i][cc] = 0;
            }
            prev = m[rank][cc];
            ++rank;
        }
        if (rank == trial.size()) cols = std::move(trial);
    }
    sb.pivot_cols = cols;
    std::vector<Row> sub(r, Row(r));
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < r; ++j) sub[i][j] = sb.rows[i][sb.pivot_cols[j]];
    sb.det = det3(sub);
    sb.adj = adjugate(sub);
    return sb;
}

// Certificate: k*v = c . rows for k = |det| >= 1 and integer c; true iff v
// lies in the rational span of the selected rows.
inline bool span_certificate(const SpanBasis& sb, const Row& v) {
    size_t r = sb.rows.size();
    size_t n = v.size();
    long long k = sb.det < 0 ? -sb.det : sb.det;
    if (k == 0) return false;
    // c = sign(det) * v_p . adj
    Row c(r, 0);
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < r; ++j) c[i] += v[sb.pivot_cols[j]] * sb.adj[j][i];
    if (sb.det < 0)
        for (auto& x : c) x = -x;
    for (size_t col = 0; col < n; ++col) {
        long long lhs = k * v[col];
        long long rhs = 0;
        for (size_t i = 0; i < r; ++i) rhs += c[i] * sb.rows[i][col];
        if (lhs != rhs) return false;
    }
    return true;
}

/// All integer points of span(gens) within the box [-bound, bound]^n, each
/// carrying a divisibility-closure certificate k*v in <gens>.
inline std::vector<Row> saturation_box_oracle(const std::vector<Row>& gens, long long bound) {
    size_t n = gens[0].size();
    SpanBasis sb = span_basis(gens);
    size_t r = sb.rows.size();
    std::vector<Row> out;
    // every dependent generator must certify into the selected span
    for (const Row& g : gens)
        if (!span_certificate(sb, g)) return out;  // should not happen

    // enumerate pivot-coordinate tuples; the rest of the vector follows
    std::vector<long long> t(r, -bound);
    if (r == 0) {
        out.push_back(Row(n, 0));
        return out;
    }
    // v = sum t_i * rows_i / d_i form: instead solve via certificate directly:
    // iterate candidate pivot values, build v by solving k*v_p fixed, then
    // check integrality through the certificate equation.
    while (true) {
        // candidate: find v with v[pivot_cols[i]] = t[i], v in span
        // c = sign * t . adj ; k * v = c . rows; v integral iff k | all entries
        long long k = sb.det < 0 ? -sb.det : sb.det;
        Row c(r, 0);
        for (size_t i = 0; i < r; ++i)
            for (size_t j = 0; j < r; ++j) c[i] += t[j] * sb.adj[j][i];
        if (sb.det < 0)
            for (auto& x : c) x = -x;
        Row v(n, 0);
        bool ok = true;
        for (size_t col = 0; col < n && ok; ++col) {
            long long num = 0;
            for (size_t i = 0; i < r; ++i) num += c[i] * sb.rows[i][col];
            if (num % k != 0) ok = false;
            else {
                v[col] = num / k;
                if (v[col] < -bound || v[col] > bound) ok = false;
            }
        }
        if (ok) {
            // consistency: pivot coordinates reproduce t
            for (size_t i = 0; i < r; ++i)
                if (v[sb.pivot_cols[i]] != t[i]) ok = false;
            if (ok && span_certificate(sb, v)) out.push_back(std::move(v));
        }
        size_t pos = 0;
        while (pos < r && t[pos] == bound) t[pos++] = -bound;
        if (pos == r) break;
        ++t[pos];
    }
    return out;
}

}  // namespace homforge::oracles
