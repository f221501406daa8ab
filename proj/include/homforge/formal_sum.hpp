#pragma once

#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "homforge/bigint.hpp"
#include "homforge/canonical.hpp"
#include "homforge/graph.hpp"

namespace homforge {

/// Basis element of the category algebra A = Z[Gamma_fin]: either the formal
/// unit or a homomorphism between canonical graphs. Ordered by
/// (dom id, cod id, map), with the unit first, so every downstream basis is
/// reproducible.
struct MorSymbol {
    bool unit = false;
    Graph dom, cod;        // canonical representatives when !unit
    std::vector<int> map;

    static MorSymbol unit_symbol() {
        MorSymbol s;
        s.unit = true;
        return s;
    }

    /// Requires canonical endpoints; use canonicalize_hom first otherwise.
    static MorSymbol from_hom(const GraphHom& h) {
        MorSymbol s;
        s.unit = false;
        s.dom = h.dom;
        s.cod = h.cod;
        s.map = h.map;
        if (s.dom.id.empty()) s.dom.id = s.dom.content_key();
        if (s.cod.id.empty()) s.cod.id = s.cod.content_key();
        return s;
    }

    static MorSymbol identity_of(const Graph& canonical_x) {
        return from_hom(GraphHom::identity(canonical_x));
    }

    GraphHom hom() const {
        if (unit) throw Error("MorSymbol: unit has no underlying hom");
        return GraphHom{dom, cod, map};
    }

    bool is_identity() const { return !unit && dom == cod && hom().is_identity(); }

    std::string label() const {
        if (unit) return "1";
        std::string s = dom.id + "->" + cod.id + "[";
        for (size_t i = 0; i < map.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(map[i]);
        }
        return s + "]";
    }

    friend bool operator==(const MorSymbol& a, const MorSymbol& b) {
        if (a.unit != b.unit) return false;
        if (a.unit) return true;
        return a.dom == b.dom && a.cod == b.cod && a.map == b.map;
    }
    friend bool operator!=(const MorSymbol& a, const MorSymbol& b) { return !(a == b); }
    friend bool operator<(const MorSymbol& a, const MorSymbol& b) {
        if (a.unit != b.unit) return a.unit;  // unit sorts first
        if (a.unit) return false;
        if (a.dom.id != b.dom.id) return a.dom.id < b.dom.id;
        if (a.cod.id != b.cod.id) return a.cod.id < b.cod.id;
        return a.map < b.map;
    }
};

/// Finitely supported integer combination of morphism symbols. Zero
/// coefficients are never stored; iteration order is the symbol order.
class FormalSum {
public:
    FormalSum() = default;
    explicit FormalSum(const MorSymbol& s, Int coeff = Int(1)) { add(s, coeff); }

    static FormalSum zero() { return FormalSum(); }
    static FormalSum unit(Int coeff = Int(1)) {
        return FormalSum(MorSymbol::unit_symbol(), std::move(coeff));
    }

    void add(const MorSymbol& s, const Int& coeff) {
        if (coeff == 0) return;
        auto [it, inserted] = terms_.emplace(s, coeff);
        if (!inserted) {
            it->second += coeff;
            if (it->second == 0) terms_.erase(it);
        }
    }

    FormalSum& operator+=(const FormalSum& o) {
        for (const auto& [s, c] : o.terms_) add(s, c);
        return *this;
    }
    FormalSum& operator-=(const FormalSum& o) {
        for (const auto& [s, c] : o.terms_) add(s, -c);
        return *this;
    }
    friend FormalSum operator+(FormalSum a, const FormalSum& b) { return a += b; }
    friend FormalSum operator-(FormalSum a, const FormalSum& b) { return a -= b; }
    friend FormalSum operator*(const Int& k, const FormalSum& a) {
        FormalSum r;
        if (k == 0) return r;
        for (const auto& [s, c] : a.terms_) r.terms_.emplace(s, k * c);
        return r;
    }

    bool is_zero() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }
    const std::map<MorSymbol, Int>& terms() const { return terms_; }
    Int coeff(const MorSymbol& s) const {
        auto it = terms_.find(s);
        return it == terms_.end() ? Int(0) : it->second;
    }

    friend bool operator==(const FormalSum& a, const FormalSum& b) {
        return a.terms_ == b.terms_;
    }
    friend bool operator!=(const FormalSum& a, const FormalSum& b) { return !(a == b); }

private:
    std::map<MorSymbol, Int> terms_;
};

inline std::set<MorSymbol> support(const FormalSum& a) {
    std::set<MorSymbol> s;
    for (const auto& [sym, c] : a.terms()) s.insert(sym);
    return s;
}

/// Product of basis symbols: composition when composable, the unit acting
/// neutrally, zero otherwise. a*b means "b then a" (maps act on the left).
inline std::optional<MorSymbol> symbol_product(const MorSymbol& a, const MorSymbol& b) {
    if (a.unit) return b;
    if (b.unit) return a;
    if (b.cod != a.dom) return std::nullopt;
    return MorSymbol::from_hom(compose(a.hom(), b.hom()));
}

/// Bilinear extension of composition-or-zero; the ring product of A.
inline FormalSum ring_multiply(const FormalSum& a, const FormalSum& b) {
    FormalSum out;
    for (const auto& [s, c] : a.terms())
        for (const auto& [t, d] : b.terms()) {
            auto p = symbol_product(s, t);
            if (p) out.add(*p, c * d);
        }
    return out;
}

}  // namespace homforge
