#pragma once

#include <string>
#include <vector>

#include "homforge/bigint.hpp"
#include "homforge/errors.hpp"

namespace homforge {

/// Dense matrix of arbitrary-precision integers, row-major.
struct IntMatrix {
    int rows = 0, cols = 0;
    std::vector<Int> a;

    IntMatrix() = default;
    IntMatrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}

    Int& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
    const Int& at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }

    static IntMatrix identity(int n) {
        IntMatrix m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    static IntMatrix from_rows(const std::vector<std::vector<long long>>& rows_in) {
        int r = static_cast<int>(rows_in.size());
        int c = r ? static_cast<int>(rows_in[0].size()) : 0;
        IntMatrix m(r, c);
        for (int i = 0; i < r; ++i) {
            if (static_cast<int>(rows_in[i].size()) != c)
                throw DimensionError("IntMatrix: ragged rows");
            for (int j = 0; j < c; ++j) m.at(i, j) = rows_in[i][j];
        }
        return m;
    }

    IntMatrix mul(const IntMatrix& o) const {
        if (cols != o.rows) throw DimensionError("IntMatrix::mul shape mismatch");
        IntMatrix r(rows, o.cols);
        for (int i = 0; i < rows; ++i)
            for (int k = 0; k < cols; ++k) {
                const Int& x = at(i, k);
                if (x == 0) continue;
                for (int j = 0; j < o.cols; ++j)
                    if (o.at(k, j) != 0) r.at(i, j) += x * o.at(k, j);
            }
        return r;
    }

    IntMatrix transpose() const {
        IntMatrix r(cols, rows);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) r.at(j, i) = at(i, j);
        return r;
    }

    friend bool operator==(const IntMatrix& x, const IntMatrix& y) {
        return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
    }
};

/// U * M * V = D with U, V unimodular and D diagonal, d_1 | d_2 | ...,
/// nonzero diagonal entries positive. W tracks V^{-1} for saturation.
struct SNFResult {
    IntMatrix U, D, V, W;
    int rank = 0;
};

/// Smith normal form. Pivot choice: smallest nonzero absolute value, ties
/// broken by lowest row then lowest column (deterministic).
inline SNFResult smith_normal_form(const IntMatrix& m_in) {
    SNFResult res;
    res.D = m_in;
    res.U = IntMatrix::identity(m_in.rows);
    res.V = IntMatrix::identity(m_in.cols);
    res.W = IntMatrix::identity(m_in.cols);
    IntMatrix& d = res.D;
    IntMatrix& u = res.U;
    IntMatrix& v = res.V;
    IntMatrix& w = res.W;
    int rows = d.rows, cols = d.cols;

    auto swap_rows = [&](int i, int j) {
        if (i == j) return;
        for (int c = 0; c < cols; ++c) std::swap(d.at(i, c), d.at(j, c));
        for (int c = 0; c < u.cols; ++c) std::swap(u.at(i, c), u.at(j, c));
    };
    auto swap_cols = [&](int i, int j) {
        if (i == j) return;
        for (int r = 0; r < rows; ++r) std::swap(d.at(r, i), d.at(r, j));
        for (int r = 0; r < v.rows; ++r) std::swap(v.at(r, i), v.at(r, j));
        for (int c = 0; c < w.cols; ++c) std::swap(w.at(i, c), w.at(j, c));
    };
    auto add_row = [&](int dst, int src, const Int& k) {  // row dst += k * row src
        if (k == 0) return;
        for (int c = 0; c < cols; ++c) d.at(dst, c) += k * d.at(src, c);
        for (int c = 0; c < u.cols; ++c) u.at(dst, c) += k * u.at(src, c);
    };
    auto add_col = [&](int dst, int src, const Int& k) {  // col dst += k * col src
        if (k == 0) return;
        for (int r = 0; r < rows; ++r) d.at(r, dst) += k * d.at(r, src);
        for (int r = 0; r < v.rows; ++r) v.at(r, dst) += k * v.at(r, src);
        // inverse op on W rows: row src -= k * row dst
        for (int c = 0; c < w.cols; ++c) w.at(src, c) -= k * w.at(dst, c);
    };
    auto negate_row = [&](int i) {
        for (int c = 0; c < cols; ++c) d.at(i, c) = -d.at(i, c);
        for (int c = 0; c < u.cols; ++c) u.at(i, c) = -u.at(i, c);
    };

    int t = 0;
    int limit = std::min(rows, cols);
    while (t < limit) {
        // pick pivot
        int pr = -1, pc = -1;
        Int best;
        for (int i = t; i < rows; ++i)
            for (int j = t; j < cols; ++j) {
                if (d.at(i, j) == 0) continue;
                Int mag = int_abs(d.at(i, j));
                if (pr < 0 || mag < best) {
                    best = mag;
                    pr = i;
                    pc = j;
                }
            }
        if (pr < 0) break;  // all zero; done
        swap_rows(t, pr);
        swap_cols(t, pc);

        bool clean = true;
        for (int i = t + 1; i < rows; ++i) {
            if (d.at(i, t) == 0) continue;
            Int q = d.at(i, t) / d.at(t, t);
            add_row(i, t, -q);
            if (d.at(i, t) != 0) clean = false;
        }
        for (int j = t + 1; j < cols; ++j) {
            if (d.at(t, j) == 0) continue;
            Int q = d.at(t, j) / d.at(t, t);
            add_col(j, t, -q);
            if (d.at(t, j) != 0) clean = false;
        }
        if (!clean) continue;  // remainders left; re-pick a smaller pivot

        // divisibility fix: pivot must divide every later entry
        bool fixed = false;
        for (int i = t + 1; i < rows && !fixed; ++i)
            for (int j = t + 1; j < cols && !fixed; ++j)
                if (d.at(i, j) % d.at(t, t) != 0) {
                    add_row(t, i, 1);
                    fixed = true;
                }
        if (fixed) continue;

        if (d.at(t, t) < 0) negate_row(t);
        ++t;
    }
    res.rank = t;
    return res;
}

/// Exact determinant by fraction-free (Bareiss) elimination.
inline Int det(const IntMatrix& m) {
    if (m.rows != m.cols) throw DimensionError("det: not square");
    if (m.rows == 0) return 1;
    IntMatrix a = m;
    Int prev = 1;
    int sign = 1;
    int n = m.rows;
    for (int k = 0; k < n - 1; ++k) {
        if (a.at(k, k) == 0) {
            int swap = -1;
            for (int i = k + 1; i < n; ++i)
                if (a.at(i, k) != 0) {
                    swap = i;
                    break;
                }
            if (swap < 0) return 0;
            for (int j = 0; j < n; ++j) std::swap(a.at(k, j), a.at(swap, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                a.at(i, j) = (a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j)) / prev;
        prev = a.at(k, k);
    }
    return sign * a.at(n - 1, n - 1);
}

inline bool is_unimodular(const IntMatrix& m) {
    if (m.rows != m.cols) return false;
    Int d = det(m);
    return d == 1 || d == -1;
}

/// Test helper: full postcondition check for an SNF result.
inline bool verify_snf(const IntMatrix& m, const SNFResult& s) {
    if (s.U.mul(m).mul(s.V) != s.D) return false;
    if (!is_unimodular(s.U) || !is_unimodular(s.V)) return false;
    if (s.V.mul(s.W) != IntMatrix::identity(m.cols)) return false;
    int limit = std::min(s.D.rows, s.D.cols);
    for (int i = 0; i < limit; ++i) {
        for (int j = 0; j < s.D.cols; ++j)
            if (i != j && s.D.at(i, j) != 0) return false;
        if (s.D.at(i, i) < 0) return false;
        if (i + 1 < limit && s.D.at(i + 1, i + 1) != 0 && s.D.at(i, i) != 0 &&
            s.D.at(i + 1, i + 1) % s.D.at(i, i) != 0)
            return false;
        if (s.D.at(i, i) == 0 && i + 1 < limit && s.D.at(i + 1, i + 1) != 0) return false;
    }
    for (int i = limit; i < s.D.rows; ++i)
        for (int j = 0; j < s.D.cols; ++j)
            if (s.D.at(i, j) != 0) return false;
    return true;
}

/// Saturated basis of the integer kernel {x : M x = 0}, as columns.
inline IntMatrix kernel_basis(const IntMatrix& m) {
    SNFResult s = smith_normal_form(m);
    IntMatrix k(m.cols, m.cols - s.rank);
    for (int j = s.rank; j < m.cols; ++j)
        for (int i = 0; i < m.cols; ++i) k.at(i, j - s.rank) = s.V.at(i, j);
    return k;
}

}  // namespace homforge
