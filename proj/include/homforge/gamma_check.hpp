#pragma once

#include <atomic>
#include <cstdint>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "homforge/cat_algebra.hpp"
#include "homforge/gfun.hpp"

namespace homforge {

inline uint64_t fnv1a(const std::string& s, uint64_t h = 1469598103934665603ull) {
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

/// Deterministic per-pair RNG stream: independent of scheduling, so reports
/// are reproducible under any worker-pool layout.
inline std::mt19937_64 pair_rng(uint64_t seed, const Graph& x, const Graph& y) {
    uint64_t h = fnv1a(y.content_key(), fnv1a(x.content_key(), seed ^ 0x9e3779b97f4a7c15ull));
    return std::mt19937_64(h);
}

/// Active set for a pair check: End(X), Hom(X,Y), id_Y and the unit. This is
/// composition-closed as it stands (post-composing by id_Y and pre-composing
/// by X-endomorphisms stays inside Hom(X,Y)) and keeps the heavy corpus
/// pairs tractable.
inline std::vector<MorSymbol> pair_active_set(const Graph& x, const Graph& y) {
    std::set<MorSymbol> s;
    s.insert(MorSymbol::unit_symbol());
    s.insert(MorSymbol::identity_of(y));
    for (const auto& h : enumerate_homs(x, x)) s.insert(MorSymbol::from_hom(h));
    for (const auto& h : enumerate_homs(x, y)) s.insert(MorSymbol::from_hom(h));
    return {s.begin(), s.end()};
}

/// Richer active set carrying both endomorphism monoids and all four
/// hom-sets of the pair; used where naturality in both variables matters.
inline std::vector<MorSymbol> rich_pair_active_set(const Graph& x, const Graph& y) {
    std::set<MorSymbol> s;
    s.insert(MorSymbol::unit_symbol());
    for (const auto& h : enumerate_homs(x, x)) s.insert(MorSymbol::from_hom(h));
    for (const auto& h : enumerate_homs(y, y)) s.insert(MorSymbol::from_hom(h));
    for (const auto& h : enumerate_homs(x, y)) s.insert(MorSymbol::from_hom(h));
    return {s.begin(), s.end()};
}

/// Reads the degree-0 coordinates of an ambient vector as a formal sum over
/// Hom(X,Y); the injectivity content of the natural map.
inline FormalSum read_degree0(const CornerStage& stage, const SparseVec& v, const Graph& x,
                              const Graph& y) {
    FormalSum u;
    for (const auto& [c, coeff] : v) {
        if (stage.coord_monomial(c) != 0) continue;
        const MorSymbol& s = stage.active[stage.coord_symbol(c)];
        if (!s.unit && s.dom == x && s.cod == y) u.add(s, coeff);
    }
    return u;
}

struct PairGammaConfig {
    int degree_cap = 2;
    int trials = 25;
    uint64_t seed = 12345;
    bool check_mono = true;
    bool check_stage_laws = false;  // purity/sandwich/idempotent split (slower)
    int multiplier_trials = 0;      // recover_multiplier roundtrips
};

struct PairGammaOutcome {
    std::string x_id, y_id;
    int hom_rank = 0;
    int stage_rank = 0;
    bool skipped = false;
    std::string skip_reason;
    std::vector<std::string> roundtrip_failures;  // gamma_inverse o gamma != id
    std::vector<std::string> read_failures;       // degree-0 coordinates != u
    std::vector<std::string> ring_failures;       // gamma(u*v) != gamma(u) o gamma(v)
    std::vector<std::string> mono_failures;       // injective hom, column-deficient action
    std::vector<std::string> stage_failures;      // stage law violations

    std::vector<std::string> failures() const {
        std::vector<std::string> all;
        for (const auto* v : {&roundtrip_failures, &read_failures, &ring_failures,
                              &mono_failures, &stage_failures})
            all.insert(all.end(), v->begin(), v->end());
        return all;
    }
    bool ok() const { return !skipped && failures().empty(); }
};

/// The per-pair flagship check: builds the pair stage, then exercises
/// roundtrip, injectivity, ring-compatibility and mono preservation of the
/// natural map at that stage. Exact integer comparisons throughout.
inline PairGammaOutcome run_gamma_pair(const Graph& x_in, const Graph& y_in,
                                       const PairGammaConfig& cfg) {
    PairGammaOutcome out;
    Graph x = canonical_form(x_in).canon;
    Graph y = canonical_form(y_in).canon;
    out.x_id = x.id;
    out.y_id = y.id;

    StagePtr stage;
    try {
        stage = build_stage(pair_active_set(x, y), cfg.degree_cap);
    } catch (const GuardExceeded& e) {
        out.skipped = true;
        out.skip_reason = e.what();
        return out;
    }
    out.stage_rank = stage->lattice.rank();

    GSnapshot gx = g_object(x, stage);
    GSnapshot gy = g_object(y, stage);
    HomGroup hxy;
    hxy.x = x;
    hxy.y = y;
    hxy.basis = enumerate_homs(x, y);
    HomGroup hxx;
    hxx.x = x;
    hxx.y = x;
    hxx.basis = enumerate_homs(x, x);
    out.hom_rank = hxy.rank();

    std::mt19937_64 rng = pair_rng(cfg.seed, x, y);

    auto roundtrip = [&](const FormalSum& u, const std::string& what) {
        SnapshotHom h = gamma(u, gx, gy);
        // injectivity read: degree-0 coordinates of h(distinguished)
        SparseVec im = apply_snapshot_hom(h, gx, gx.distinguished.coords);
        if (read_degree0(*stage, im, x, y) != u)
            out.read_failures.push_back(what + ": degree-0 read does not reproduce the sum");
        try {
            if (gamma_inverse(h, gx, gy) != u)
                out.roundtrip_failures.push_back(what + ": gamma_inverse returned a different sum");
        } catch (const NotInImage& e) {
            out.roundtrip_failures.push_back(what + ": gamma_inverse rejected a gamma image: " +
                                             e.what());
        }
    };

    std::vector<FormalSum> random_sums;
    for (int t = 0; t < cfg.trials; ++t) random_sums.push_back(hxy.random_element(rng));

    for (const auto& b : hxy.basis) roundtrip(FormalSum(MorSymbol::from_hom(b)), "basis hom");
    for (int t = 0; t < cfg.trials; ++t) roundtrip(random_sums[t], "random sum " + std::to_string(t));

    // ring compatibility: gamma(u*v) = gamma(u) o gamma(v), v an endo sum of X
    for (int t = 0; t < cfg.trials; ++t) {
        FormalSum u = hxy.random_element(rng);
        FormalSum v = hxx.random_element(rng);
        SnapshotHom lhs = gamma(ring_multiply(u, v), gx, gy);
        SnapshotHom rhs =
            compose_snapshot_homs(gamma(u, gx, gy), gx, gamma(v, gx, gx));
        if (!(lhs == rhs))
            out.ring_failures.push_back("ring compatibility failed on trial " + std::to_string(t));
    }

    if (cfg.check_mono) {
        for (const auto& b : hxy.basis) {
            if (!b.injective()) continue;
            SnapshotHom h = g_morphism(b, gx, gy);
            if (!snapshot_hom_injective(h, gy))
                out.mono_failures.push_back("mono preservation failed for an injective hom");
        }
    }

    if (cfg.check_stage_laws) {
        if (!is_saturated(stage->lattice))
            out.stage_failures.push_back("stage lattice not saturated");
        // algebra span sits inside and is pure
        std::vector<SparseVec> unit_rows;
        for (int i = 0; i < stage->symbols(); ++i)
            unit_rows.push_back({{stage->coord(0, i), Int(1)}});
        Lattice aspan = Lattice::from_rows(stage->ambient_dim, unit_rows);
        try {
            if (!is_pure_in(aspan, stage->lattice))
                out.stage_failures.push_back("algebra span not pure in the stage lattice");
        } catch (const NotSublattice&) {
            out.stage_failures.push_back("algebra span escaped the stage lattice");
        }
        auto [part, rest] = idempotent_split(*stage, x);
        if (part.rank() + rest.rank() != stage->lattice.rank())
            out.stage_failures.push_back("idempotent split ranks do not add");
        for (int t = 0; t < cfg.multiplier_trials; ++t) {
            FormalSum a;
            int terms = 1 + static_cast<int>(rng() % 3);
            for (int k = 0; k < terms; ++k) {
                int idx = static_cast<int>(rng() % stage->symbols());
                int coeff = static_cast<int>(rng() % 19) - 9;
                if (coeff == 0) coeff = 1;
                a.add(stage->active[idx], coeff);
            }
            StageEndo h = endo_of_multiplier(*stage, a);
            try {
                if (recover_multiplier(*stage, h) != a) {
                    out.stage_failures.push_back("recover_multiplier roundtrip mismatch");
                    break;
                }
            } catch (const NotLeftMultiplication& e) {
                out.stage_failures.push_back(std::string("recover_multiplier rejected: ") + e.what());
                break;
            }
        }
    }
    return out;
}

/// Runs a job for every ordered pair index over a corpus on a small worker
/// pool; results land in pair order regardless of scheduling.
template <class Job>
void for_each_ordered_pair(size_t n, int threads, Job&& job) {
    if (threads < 1) threads = 1;
    std::atomic<size_t> next{0};
    size_t total = n * n;
    auto worker = [&]() {
        while (true) {
            size_t k = next.fetch_add(1);
            if (k >= total) break;
            job(k / n, k % n, k);
        }
    };
    if (threads == 1) {
        worker();
        return;
    }
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
}

}  // namespace homforge
