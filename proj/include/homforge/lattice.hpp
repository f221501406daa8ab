#pragma once

#include <algorithm>
#include <map>
#include <unordered_map>
#include <optional>
#include <vector>

#include "homforge/int_matrix.hpp"

namespace homforge {

/// Sparse integer vector: (coordinate, coefficient) pairs, sorted by
/// coordinate, coefficients nonzero.
using SparseVec = std::vector<std::pair<long long, Int>>;

inline void sv_normalize(SparseVec& v) {
    std::sort(v.begin(), v.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    SparseVec out;
    for (auto& [c, x] : v) {
        if (!out.empty() && out.back().first == c)
            out.back().second += x;
        else
            out.push_back({c, x});
    }
    out.erase(std::remove_if(out.begin(), out.end(),
                             [](const auto& p) { return p.second == 0; }),
              out.end());
    v = std::move(out);
}

/// a + k*b, both normalized.
inline SparseVec sv_add_scaled(const SparseVec& a, const SparseVec& b, const Int& k) {
    SparseVec out;
    out.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            Int x = k * b[j].second;
            if (x != 0) out.push_back({b[j].first, std::move(x)});
            ++j;
        } else {
            Int x = a[i].second + k * b[j].second;
            if (x != 0) out.push_back({a[i].first, std::move(x)});
            ++i;
            ++j;
        }
    }
    return out;
}

inline SparseVec sv_scale(const SparseVec& a, const Int& k) {
    if (k == 0) return {};
    SparseVec out = a;
    for (auto& [c, x] : out) x *= k;
    return out;
}

inline std::optional<Int> sv_coeff(const SparseVec& a, long long col) {
    auto it = std::lower_bound(a.begin(), a.end(), col,
                               [](const auto& p, long long c) { return p.first < c; });
    if (it == a.end() || it->first != col) return std::nullopt;
    return it->second;
}

inline SparseVec sv_from_dense(const std::vector<Int>& dense) {
    SparseVec v;
    for (size_t i = 0; i < dense.size(); ++i)
        if (dense[i] != 0) v.push_back({(long long)i, dense[i]});
    return v;
}

/// Finitely generated sublattice of Z^ambient, stored as its canonical
/// row-style Hermite basis: rows sorted by pivot column, pivots positive,
/// entries above a pivot reduced into [0, pivot). Lattices are equal exactly
/// when their canonical bases are.
class Lattice {
public:
    Lattice() = default;

    static Lattice from_rows(long long ambient, std::vector<SparseVec> rows) {
        Lattice l;
        l.ambient_ = ambient;
        detail_build(l, std::move(rows));
        return l;
    }

    static Lattice from_matrix(const IntMatrix& gens) {
        std::vector<SparseVec> rows;
        for (int i = 0; i < gens.rows; ++i) {
            SparseVec r;
            for (int j = 0; j < gens.cols; ++j)
                if (gens.at(i, j) != 0) r.push_back({j, gens.at(i, j)});
            rows.push_back(std::move(r));
        }
        return from_rows(gens.cols, std::move(rows));
    }

    static Lattice full(long long ambient) {
        std::vector<SparseVec> rows;
        for (long long i = 0; i < ambient; ++i) rows.push_back({{i, Int(1)}});
        return from_rows(ambient, std::move(rows));
    }

    long long ambient() const { return ambient_; }
    int rank() const { return static_cast<int>(basis_.size()); }
    const std::vector<SparseVec>& basis() const { return basis_; }

    IntMatrix basis_matrix() const {
        if (ambient_ > 100000) throw GuardExceeded("basis_matrix: ambient too large for dense");
        IntMatrix m(rank(), static_cast<int>(ambient_));
        for (int i = 0; i < rank(); ++i)
            for (const auto& [c, x] : basis_[i]) m.at(i, static_cast<int>(c)) = x;
        return m;
    }

    friend bool operator==(const Lattice& a, const Lattice& b) {
        return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
    }

private:
    static void detail_build(Lattice& l, std::vector<SparseVec> rows);

    long long ambient_ = 0;
    std::vector<SparseVec> basis_;

    friend std::optional<std::vector<Int>> member(const SparseVec&, const Lattice&);
};

inline void Lattice::detail_build(Lattice& l, std::vector<SparseVec> rows) {
    std::map<long long, SparseVec> pivots;  // pivot column -> row
    for (SparseVec& raw : rows) {
        SparseVec row = std::move(raw);
        sv_normalize(row);
        for (const auto& [c, x] : row)
            if (c < 0 || c >= l.ambient_) throw DimensionError("lattice row out of ambient");
        while (!row.empty()) {
            long long c = row.front().first;
            auto it = pivots.find(c);
            if (it == pivots.end()) {
                if (row.front().second < 0) row = sv_scale(row, Int(-1));
                pivots.emplace(c, std::move(row));
                break;
            }
            const Int& b = it->second.front().second;  // > 0
            const Int& a = row.front().second;
            if (a % b == 0) {
                row = sv_add_scaled(row, it->second, -(a / b));
            } else {
                Int g, x, y;
                ext_gcd(b, a, g, x, y);
                SparseVec newp = sv_add_scaled(sv_scale(it->second, x), row, y);
                SparseVec rest = sv_add_scaled(sv_scale(row, b / g), it->second, -(a / g));
                it->second = std::move(newp);
                row = std::move(rest);
                sv_normalize(row);  // defensive; add paths keep order already
            }
        }
    }
    // canonical reduction: entries sitting above another row's pivot go into
    // [0, pivot). Only coefficients at foreign pivot columns need work, so
    // this pass is linear when nothing collides.
    std::vector<long long> cols;
    for (auto& [c, r] : pivots) cols.push_back(c);
    for (auto& [c, r] : pivots) {
        bool changed = true;
        while (changed) {
            changed = false;
            for (size_t k = 1; k < r.size(); ++k) {
                auto it = pivots.find(r[k].first);
                if (it == pivots.end()) continue;
                const Int& p = it->second.front().second;
                Int q = floor_div(r[k].second, p);
                if (q == 0) continue;
                r = sv_add_scaled(r, it->second, -q);
                changed = true;
                break;
            }
        }
    }
    for (auto& [c, r] : pivots) l.basis_.push_back(std::move(r));
}

/// Coordinates of v in the canonical basis if v lies in L, else nullopt.
inline std::optional<std::vector<Int>> member(const SparseVec& v, const Lattice& l) {
    for (const auto& [c, x] : v)
        if (c < 0 || c >= l.ambient())
            throw DimensionError("member: vector outside ambient space");
    std::map<long long, int> pivot_index;
    for (int i = 0; i < l.rank(); ++i) pivot_index[l.basis()[i].front().first] = i;
    std::vector<Int> coords(l.rank(), Int(0));
    SparseVec r = v;
    while (!r.empty()) {
        long long c = r.front().first;
        auto it = pivot_index.find(c);
        if (it == pivot_index.end()) return std::nullopt;
        const SparseVec& b = l.basis()[it->second];
        const Int& p = b.front().second;
        if (r.front().second % p != 0) return std::nullopt;
        Int q = r.front().second / p;
        coords[it->second] = q;
        r = sv_add_scaled(r, b, -q);
    }
    return coords;
}

inline bool contains(const SparseVec& v, const Lattice& l) { return member(v, l).has_value(); }

/// Coordinates w.r.t. the canonical basis in sparse form: (basis row, coeff).
using SparseCoords = std::vector<std::pair<int, Int>>;

/// Repeated-membership helper: caches the pivot index of a fixed lattice and
/// never materializes dense coordinate vectors.
class MemberSolver {
public:
    explicit MemberSolver(const Lattice& l) : l_(l) {
        pivot_index_.reserve(l.rank() * 2);
        for (int i = 0; i < l.rank(); ++i) pivot_index_.emplace(l.basis()[i].front().first, i);
    }

    std::optional<SparseCoords> solve(const SparseVec& v) const {
        SparseCoords coords;
        SparseVec r = v;
        while (!r.empty()) {
            auto it = pivot_index_.find(r.front().first);
            if (it == pivot_index_.end()) return std::nullopt;
            const SparseVec& b = l_.basis()[it->second];
            if (r.front().second % b.front().second != 0) return std::nullopt;
            Int q = r.front().second / b.front().second;
            coords.push_back({it->second, q});
            r = sv_add_scaled(r, b, -q);
        }
        return coords;
    }

    bool contains(const SparseVec& v) const {
        SparseVec r = v;
        while (!r.empty()) {
            auto it = pivot_index_.find(r.front().first);
            if (it == pivot_index_.end()) return false;
            const SparseVec& b = l_.basis()[it->second];
            if (r.front().second % b.front().second != 0) return false;
            r = sv_add_scaled(r, b, -(r.front().second / b.front().second));
        }
        return true;
    }

    const Lattice& lattice() const { return l_; }

private:
    const Lattice& l_;
    std::unordered_map<long long, int> pivot_index_;
};

/// True iff L is pure (saturated) in Z^ambient. Unit pivots certify purity
/// immediately; otherwise the invariant factors of the basis decide.
inline bool is_saturated(const Lattice& l) {
    bool units = true;
    for (const auto& r : l.basis())
        if (r.front().second != 1) {
            units = false;
            break;
        }
    if (units) return true;
    // compact the support columns and check invariant factors
    std::map<long long, int> colmap;
    for (const auto& r : l.basis())
        for (const auto& [c, x] : r) colmap.emplace(c, 0);
    int nc = 0;
    for (auto& [c, idx] : colmap) idx = nc++;
    IntMatrix m(l.rank(), nc);
    for (int i = 0; i < l.rank(); ++i)
        for (const auto& [c, x] : l.basis()[i]) m.at(i, colmap[c]) = x;
    SNFResult s = smith_normal_form(m);
    for (int i = 0; i < s.rank; ++i)
        if (s.D.at(i, i) != 1) return false;
    return true;
}

/// Smallest saturated (pure) sublattice of Z^ambient containing L: the
/// integer points of L's rational span. Computed by replacing the invariant
/// factors of the basis with 1 (rows of V^{-1} from the Smith form); lattices
/// whose canonical basis already has unit pivots are returned unchanged.
inline Lattice saturate(const Lattice& l) {
    bool units = true;
    for (const auto& r : l.basis())
        if (r.front().second != 1) {
            units = false;
            break;
        }
    if (units) return l;

    std::map<long long, int> colmap;
    for (const auto& r : l.basis())
        for (const auto& [c, x] : r) colmap.emplace(c, 0);
    std::vector<long long> cols;
    for (auto& [c, idx] : colmap) {
        idx = static_cast<int>(cols.size());
        cols.push_back(c);
    }
    IntMatrix m(l.rank(), static_cast<int>(cols.size()));
    for (int i = 0; i < l.rank(); ++i)
        for (const auto& [c, x] : l.basis()[i]) m.at(i, colmap[c]) = x;
    SNFResult s = smith_normal_form(m);
    // rows of M span d_i * (rows of W); dropping the d_i saturates
    std::vector<SparseVec> rows;
    for (int i = 0; i < s.rank; ++i) {
        SparseVec r;
        for (int j = 0; j < s.W.cols; ++j)
            if (s.W.at(i, j) != 0) r.push_back({cols[j], s.W.at(i, j)});
        rows.push_back(std::move(r));
    }
    return Lattice::from_rows(l.ambient(), std::move(rows));
}

/// True iff L is pure in M: k*v in L and v in M imply v in L. Decided by the
/// invariant factors of the inclusion. Throws NotSublattice when L is not
/// contained in M.
inline bool is_pure_in(const Lattice& l, const Lattice& m) {
    if (l.ambient() != m.ambient()) throw DimensionError("is_pure_in: ambient mismatch");
    IntMatrix coords(l.rank(), m.rank());
    for (int i = 0; i < l.rank(); ++i) {
        auto c = member(l.basis()[i], m);
        if (!c) throw NotSublattice("is_pure_in: first lattice is not inside the second");
        for (int j = 0; j < m.rank(); ++j) coords.at(i, j) = (*c)[j];
    }
    SNFResult s = smith_normal_form(coords);
    if (s.rank != l.rank()) return false;  // cannot happen for a basis; defensive
    for (int i = 0; i < s.rank; ++i)
        if (s.D.at(i, i) != 1) return false;
    return true;
}

/// Lattice generated by both arguments together.
inline Lattice lattice_sum(const Lattice& a, const Lattice& b) {
    if (a.ambient() != b.ambient()) throw DimensionError("lattice_sum: ambient mismatch");
    std::vector<SparseVec> rows = a.basis();
    for (const auto& r : b.basis()) rows.push_back(r);
    return Lattice::from_rows(a.ambient(), std::move(rows));
}

/// Splits M by an idempotent action: (image of a, image of 1-a). The action
/// must preserve M and square to itself on M; both are checked. The two parts
/// sum to M and intersect trivially (verified via rank additivity).
template <class Apply>
std::pair<Lattice, Lattice> split_by_idempotent_fn(const Lattice& m, Apply&& apply) {
    MemberSolver solver(m);
    std::vector<SparseVec> im_rows, co_rows;
    for (const auto& b : m.basis()) {
        SparseVec ab = apply(b);
        sv_normalize(ab);
        if (!solver.contains(ab))
            throw Error("split_by_idempotent: action does not preserve the lattice");
        SparseVec aab = apply(ab);
        sv_normalize(aab);
        if (aab != ab) throw Error("split_by_idempotent: action is not idempotent on the lattice");
        co_rows.push_back(sv_add_scaled(b, ab, Int(-1)));
        im_rows.push_back(std::move(ab));
    }
    Lattice l1 = Lattice::from_rows(m.ambient(), std::move(im_rows));
    Lattice l2 = Lattice::from_rows(m.ambient(), std::move(co_rows));
    if (l1.rank() + l2.rank() != m.rank())
        throw Error("split_by_idempotent: ranks do not add up");
    if (!(lattice_sum(l1, l2) == m))
        throw Error("split_by_idempotent: parts do not sum back to the lattice");
    return {std::move(l1), std::move(l2)};
}

inline std::pair<Lattice, Lattice> split_by_idempotent(const Lattice& m, const IntMatrix& action) {
    if (action.rows != action.cols || action.rows != m.ambient())
        throw DimensionError("split_by_idempotent: action shape mismatch");
    return split_by_idempotent_fn(m, [&](const SparseVec& v) {
        SparseVec out;
        for (int i = 0; i < action.rows; ++i) {
            Int acc = 0;
            for (const auto& [c, x] : v) acc += action.at(i, static_cast<int>(c)) * x;
            if (acc != 0) out.push_back({i, std::move(acc)});
        }
        return out;
    });
}

}  // namespace homforge
