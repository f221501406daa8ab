#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "homforge/cat_algebra.hpp"
#include "homforge/corpus.hpp"
#include "homforge/gadget.hpp"
#include "homforge/gamma_check.hpp"
#include "homforge/graph_io.hpp"
#include "homforge/ortho.hpp"
#include "homforge/report.hpp"
#include "homforge/rigid.hpp"

namespace homforge {

struct CliOptions {
    int corpus_max_n = 3;
    int degree_cap = 2;
    int reflect_cap = 32;
    int trials = 25;
    uint64_t seed = 12345;
    int threads = 2;
    std::string out_path;
    std::string format = "json";
};

inline OrderedJson config_echo(const CliOptions& o) {
    OrderedJson j;
    j["corpus_max_n"] = o.corpus_max_n;
    j["degree_cap"] = o.degree_cap;
    j["reflect_cap"] = o.reflect_cap;
    j["trials"] = o.trials;
    j["seed"] = o.seed;
    return j;
}

inline std::vector<Graph> load_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open graph file: " + path);
    return parse_graphs(in);
}

// ---------------------------------------------------------------- homs

inline Report cmd_homs(const std::string& file_x, const std::string& file_y,
                       const CliOptions& opt) {
    Report rep;
    rep.command = "homs";
    rep.config = config_echo(opt);
    std::vector<Graph> xs = load_graph_file(file_x);
    std::vector<Graph> ys = load_graph_file(file_y);
    if (xs.empty() || ys.empty()) throw Error("homs: each input file needs one graph");
    const Graph& x = xs.front();
    const Graph& y = ys.front();
    std::vector<GraphHom> homs = enumerate_homs(x, y);
    OrderedJson list = OrderedJson::array();
    for (const auto& h : homs) list.push_back(h.map);
    rep.payload["dom"] = graph_to_json(x);
    rep.payload["cod"] = graph_to_json(y);
    rep.payload["count"] = homs.size();
    rep.payload["homs"] = std::move(list);
    rep.add(CheckResult::pass("enumerated " + std::to_string(homs.size()) + " homs"));
    return rep;
}

// ---------------------------------------------------------------- canon

inline Report cmd_canon(const std::string& file, const CliOptions& opt) {
    Report rep;
    rep.command = "canon";
    rep.config = config_echo(opt);
    OrderedJson list = OrderedJson::array();
    for (const Graph& g : load_graph_file(file)) {
        CanonResult c = canonical_form(g);
        OrderedJson e;
        e["input"] = graph_to_json(g);
        e["canonical"] = graph_to_json(c.canon);
        e["iso"] = c.iso.map;
        list.push_back(std::move(e));
    }
    rep.payload["graphs"] = std::move(list);
    rep.add(CheckResult::pass("canonicalized " + std::to_string(rep.payload["graphs"].size()) +
                              " graphs"));
    return rep;
}

// ---------------------------------------------------------------- embed

inline Report cmd_embed(const std::string& file, const CliOptions& opt) {
    Report rep;
    rep.command = "embed";
    rep.config = config_echo(opt);
    OrderedJson list = OrderedJson::array();
    for (const Graph& g : load_graph_file(file)) {
        Graph e = gadget_embed_obj(g);
        OrderedJson entry;
        entry["input"] = graph_to_json(g);
        entry["embedded"] = graph_to_json(e);
        list.push_back(std::move(entry));
    }
    rep.payload["graphs"] = std::move(list);
    rep.add(CheckResult::pass("embedded " + std::to_string(rep.payload["graphs"].size()) +
                              " graphs"));
    return rep;
}

// ---------------------------------------------------------------- gamma-check

inline Report cmd_gamma_check(const CliOptions& opt) {
    Report rep;
    rep.command = "gamma-check";
    rep.config = config_echo(opt);
    std::vector<Graph> corpus = canonical_corpus(opt.corpus_max_n);
    size_t n = corpus.size();
    rep.payload["corpus_size"] = n;

    PairGammaConfig cfg;
    cfg.degree_cap = opt.degree_cap;
    cfg.trials = opt.trials;
    cfg.seed = opt.seed;

    std::vector<PairGammaOutcome> outcomes(n * n);
    for_each_ordered_pair(n, opt.threads, [&](size_t i, size_t j, size_t k) {
        try {
            outcomes[k] = run_gamma_pair(corpus[i], corpus[j], cfg);
        } catch (const Error& e) {
            outcomes[k].x_id = corpus[i].id;
            outcomes[k].y_id = corpus[j].id;
            outcomes[k].stage_failures.push_back(std::string("exception: ") + e.what());
        }
    });

    long long pass = 0;
    for (const auto& o : outcomes) {
        std::string name = "gamma " + o.x_id + " -> " + o.y_id;
        if (o.skipped) {
            rep.add(CheckResult::skipped(name, {{"reason", o.skip_reason}}));
        } else if (o.ok()) {
            ++pass;  // passing pairs are summarized, not listed one by one
        } else {
            OrderedJson d;
            d["failures"] = o.failures();
            rep.add(CheckResult::fail(name, std::move(d)));
        }
    }
    rep.add(CheckResult::pass(std::to_string(pass) + "/" + std::to_string(n * n) +
                              " pairs passed roundtrip, ring and mono checks"));
    if (pass != static_cast<long long>(n * n))
        rep.checks.back() =
            CheckResult::fail("only " + std::to_string(pass) + "/" + std::to_string(n * n) +
                              " pairs passed");
    return rep;
}

// ---------------------------------------------------------------- corner-stage

inline Report cmd_corner_stage(const std::string& file, const CliOptions& opt) {
    Report rep;
    rep.command = "corner-stage";
    rep.config = config_echo(opt);
    std::vector<Graph> graphs = load_graph_file(file);
    if (graphs.empty()) throw Error("corner-stage: no graphs in input");
    std::set<MorSymbol> syms;
    syms.insert(MorSymbol::unit_symbol());
    std::vector<Graph> canon;
    for (const Graph& g : graphs) canon.push_back(canonical_form(g).canon);
    for (const Graph& a : canon)
        for (const Graph& b : canon)
            for (const GraphHom& h : enumerate_homs(a, b)) syms.insert(MorSymbol::from_hom(h));
    StagePtr st = build_stage({syms.begin(), syms.end()}, opt.degree_cap);
    rep.payload["stage"] = stage_to_json(*st);
    rep.add(CheckResult::pass("stage with " + std::to_string(st->symbols()) + " symbols, rank " +
                              std::to_string(st->lattice.rank())));
    rep.add(is_saturated(st->lattice) ? CheckResult::pass("stage lattice saturated")
                                      : CheckResult::fail("stage lattice saturated"));
    return rep;
}

// ---------------------------------------------------------------- experiments

struct Experiment {
    std::map<std::string, Graph> graphs;           // by id
    std::vector<std::string> graph_order;
    std::map<std::string, GraphHom> morphisms;     // by id
    std::vector<std::string> morphism_order;
    std::vector<std::string> s_ids;                // morphism class S
    std::vector<std::string> d_ids;                // object class D
    std::vector<std::string> object_ids;           // reflection targets
    int cap = 0;
};

inline Experiment parse_experiment(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open experiment file: " + path);
    OrderedJson j;
    try {
        j = OrderedJson::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(0, std::string("experiment JSON: ") + e.what());
    }
    Experiment ex;
    for (const auto& gj : j.value("graphs", OrderedJson::array())) {
        Graph g = graph_from_json(gj);
        if (ex.graphs.count(g.id)) throw Error("experiment: duplicate graph id " + g.id);
        ex.graph_order.push_back(g.id);
        ex.graphs.emplace(g.id, std::move(g));
    }
    auto graph_ref = [&](const std::string& id) -> const Graph& {
        auto it = ex.graphs.find(id);
        if (it == ex.graphs.end()) throw Error("experiment: unknown graph id " + id);
        return it->second;
    };
    int anon = 0;
    for (const auto& mj : j.value("morphisms", OrderedJson::array())) {
        std::string id = mj.value("id", std::string());
        if (id.empty()) id = "m" + std::to_string(anon++);
        const Graph& dom = graph_ref(mj.at("dom").get<std::string>());
        const Graph& cod = graph_ref(mj.at("cod").get<std::string>());
        GraphHom h = GraphHom::make(dom, cod, mj.at("map").get<std::vector<int>>());
        if (ex.morphisms.count(id)) throw Error("experiment: duplicate morphism id " + id);
        ex.morphism_order.push_back(id);
        ex.morphisms.emplace(id, std::move(h));
    }
    for (const auto& s : j.value("S", OrderedJson::array())) {
        std::string id = s.get<std::string>();
        if (!ex.morphisms.count(id)) throw Error("experiment: unknown morphism id in S: " + id);
        ex.s_ids.push_back(id);
    }
    for (const auto& d : j.value("D", OrderedJson::array())) {
        std::string id = d.get<std::string>();
        graph_ref(id);
        ex.d_ids.push_back(id);
    }
    for (const auto& o : j.value("objects", OrderedJson::array())) {
        std::string id = o.get<std::string>();
        graph_ref(id);
        ex.object_ids.push_back(id);
    }
    ex.cap = j.value("cap", 0);
    return ex;
}

inline OrderedJson trace_to_json(const std::vector<ReflectionStep>& trace) {
    OrderedJson t = OrderedJson::array();
    for (const auto& s : trace) {
        OrderedJson e;
        e["f_index"] = s.f_index;
        e["kind"] = s.kind;
        e["attach_map"] = s.attach_map;
        e["vertices_after"] = s.vertices_after;
        e["arcs_after"] = s.arcs_after;
        t.push_back(std::move(e));
    }
    return t;
}

// ---------------------------------------------------------------- reflect

inline Report cmd_reflect(const std::string& path, const CliOptions& opt) {
    Report rep;
    rep.command = "reflect";
    rep.config = config_echo(opt);
    Experiment ex = parse_experiment(path);
    int cap = ex.cap > 0 ? ex.cap : opt.reflect_cap;
    std::vector<GraphHom> s;
    for (const auto& id : ex.s_ids) s.push_back(ex.morphisms.at(id));
    std::vector<std::string> targets =
        ex.object_ids.empty() ? ex.graph_order : ex.object_ids;
    OrderedJson results = OrderedJson::array();
    for (const std::string& id : targets) {
        const Graph& x = ex.graphs.at(id);
        ReflectionResult r = reflect(x, s, cap);
        OrderedJson e;
        e["object"] = id;
        bool converged = r.status == ReflectionResult::Status::converged;
        e["status"] = converged ? "converged" : "cap_exceeded";
        e["iterations"] = r.iterations;
        e["lx"] = graph_to_json(r.lx);
        e["eta"] = r.eta.map;
        e["trace"] = trace_to_json(r.trace);
        results.push_back(std::move(e));
        if (converged) {
            // fixed point: reflecting LX again converges immediately
            ReflectionResult again = reflect(r.lx, s, cap);
            bool fixed = again.status == ReflectionResult::Status::converged &&
                         again.iterations == 0 &&
                         canonical_form(again.lx).canon == canonical_form(r.lx).canon;
            rep.add(fixed ? CheckResult::pass("reflection of " + id + " converged to a fixed point")
                          : CheckResult::fail("reflection of " + id + " is not a fixed point"));
        } else {
            rep.add(CheckResult::pass("reflection of " + id + " hit the cap (reported with trace)"));
        }
    }
    rep.payload["reflections"] = std::move(results);
    return rep;
}

// ---------------------------------------------------------------- ortho-grid

inline Report cmd_ortho_grid(const std::string& path, const CliOptions& opt) {
    Report rep;
    rep.command = "ortho-grid";
    rep.config = config_echo(opt);
    Experiment ex = parse_experiment(path);
    OrderedJson matrix = OrderedJson::array();
    bool all_agree = true;
    for (const std::string& mid : ex.morphism_order) {
        const GraphHom& f = ex.morphisms.at(mid);
        OrderedJson row;
        row["morphism"] = mid;
        OrderedJson verdicts = OrderedJson::array();
        for (const std::string& gid : ex.graph_order) {
            const Graph& x = ex.graphs.at(gid);
            bool ortho = is_orthogonal(f, x);
            bool transported = transported_orthogonality(f, x);
            if (ortho != transported) all_agree = false;
            verdicts.push_back({{"object", gid}, {"orthogonal", ortho}});
        }
        row["verdicts"] = std::move(verdicts);
        matrix.push_back(std::move(row));
    }
    rep.payload["grid"] = std::move(matrix);
    rep.add(all_agree ? CheckResult::pass("set-level and linearized orthogonality agree")
                      : CheckResult::fail("orthogonality checks disagree"));

    if (!ex.s_ids.empty()) {
        std::vector<GraphHom> s;
        for (const auto& id : ex.s_ids) s.push_back(ex.morphisms.at(id));
        OrderedJson perp = OrderedJson::array();
        for (const std::string& gid : ex.graph_order) {
            std::vector<Graph> one{ex.graphs.at(gid)};
            if (!perp_objects(s, one).empty()) perp.push_back(gid);
        }
        rep.payload["S_perp_objects"] = std::move(perp);
    }
    if (!ex.d_ids.empty()) {
        std::vector<Graph> d;
        for (const auto& id : ex.d_ids) d.push_back(ex.graphs.at(id));
        OrderedJson perp = OrderedJson::array();
        for (const std::string& mid : ex.morphism_order) {
            std::vector<GraphHom> one{ex.morphisms.at(mid)};
            if (!perp_morphisms(d, one).empty()) perp.push_back(mid);
        }
        rep.payload["D_perp_morphisms"] = std::move(perp);
    }
    return rep;
}

// ---------------------------------------------------------------- rigid-search

inline Report cmd_rigid_search(int max_vertices, int count, const CliOptions& opt) {
    Report rep;
    rep.command = "rigid-search";
    rep.config = config_echo(opt);
    rep.config["max_vertices"] = max_vertices;
    rep.config["count"] = count;
    std::vector<Graph> system;
    try {
        system = rigid_search(max_vertices, count);
    } catch (const SearchExhausted& e) {
        rep.add(CheckResult::fail("search", {{"reason", e.what()}}));
        return rep;
    }
    OrderedJson gs = OrderedJson::array();
    for (const Graph& g : system) gs.push_back(graph_to_json(g));
    rep.payload["system"] = std::move(gs);
    bool verified = true;
    for (size_t i = 0; i < system.size(); ++i)
        for (size_t j = 0; j < system.size(); ++j) {
            std::vector<GraphHom> homs = enumerate_homs(system[i], system[j]);
            if (i == j) {
                if (homs.size() != 1 || !homs[0].is_identity()) verified = false;
            } else if (!homs.empty()) {
                verified = false;
            }
        }
    rep.add(verified ? CheckResult::pass("system verified pairwise by enumeration")
                     : CheckResult::fail("returned system failed re-verification"));
    return rep;
}

// ---------------------------------------------------------------- section 5 demos

/// Rank of the subgroup of Hom(GX, GY) spanned by the images gamma(basis
/// homs): the transported hom-group rank. Snapshot homs are flattened
/// column-major into one long vector each.
inline int transported_rank(const Graph& x, const Graph& y, int degree_cap) {
    Graph cx = canonical_form(x).canon;
    Graph cy = canonical_form(y).canon;
    StagePtr st = build_stage(pair_active_set(cx, cy), degree_cap);
    GSnapshot gx = g_object(cx, st);
    GSnapshot gy = g_object(cy, st);
    std::vector<SparseVec> rows;
    for (const GraphHom& h : enumerate_homs(cx, cy)) {
        SnapshotHom m = g_morphism(h, gx, gy);
        SparseVec flat;
        for (size_t col = 0; col < m.cols.size(); ++col)
            for (const auto& [c, v] : m.cols[col])
                flat.push_back({static_cast<long long>(col) * st->ambient_dim + c, v});
        rows.push_back(std::move(flat));
    }
    long long flat_ambient = st->ambient_dim * std::max<long long>(1, gx.lattice.rank());
    return Lattice::from_rows(flat_ambient, std::move(rows)).rank();
}

inline long long binomial_ll(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

inline Report cmd_demo_section5(const std::string& which, const CliOptions& opt) {
    Report rep;
    rep.command = "demo section5";
    rep.config = config_echo(opt);
    rep.config["which"] = which;
    bool run_rigid = which == "rigid" || which == "all";
    bool run_chains = which == "chains" || which == "all";
    bool run_wedge = which == "wedge" || which == "all";
    if (!run_rigid && !run_chains && !run_wedge)
        throw Error("demo section5: --which must be rigid, chains, wedge or all");

    if (run_chains) {
        bool counts_ok = true, ranks_ok = true;
        OrderedJson table = OrderedJson::array();
        for (int m = 1; m <= 6; ++m) {
            OrderedJson row = OrderedJson::array();
            for (int n = 1; n <= 6; ++n) {
                long long got = count_homs(chain_graph(m), chain_graph(n));
                if (got != binomial_ll(n, m)) counts_ok = false;
                if (m > n && got != 0) counts_ok = false;
                row.push_back(got);
            }
            table.push_back(std::move(row));
        }
        rep.payload["chain_hom_counts"] = std::move(table);
        for (int m = 1; m <= 6 && ranks_ok; ++m)
            for (int n = 1; n <= 6 && ranks_ok; ++n)
                if (transported_rank(chain_graph(m), chain_graph(n), opt.degree_cap) !=
                    binomial_ll(n, m))
                    ranks_ok = false;
        rep.add(counts_ok ? CheckResult::pass("chain hom counts match C(n,m)")
                          : CheckResult::fail("chain hom counts match C(n,m)"));
        rep.add(ranks_ok ? CheckResult::pass("transported chain hom-group ranks match C(n,m)")
                         : CheckResult::fail("transported chain hom-group ranks match C(n,m)"));
    }

    if (run_rigid) {
        std::vector<Graph> sys = rigid_search(8, 2);
        OrderedJson gs = OrderedJson::array();
        for (const Graph& g : sys) gs.push_back(graph_to_json(g));
        rep.payload["rigid_system"] = std::move(gs);
        bool pattern = true;
        for (size_t i = 0; i < sys.size(); ++i)
            for (size_t j = 0; j < sys.size(); ++j) {
                HomGroup hg = hom_group(sys[i], sys[j]);
                int expect = (i == j) ? 1 : 0;
                if (hg.rank() != expect) pattern = false;
                if (transported_rank(sys[i], sys[j], opt.degree_cap) != expect) pattern = false;
            }
        rep.add(pattern ? CheckResult::pass("rigid pair: hom-group ranks are identity pattern")
                        : CheckResult::fail("rigid pair: hom-group ranks are identity pattern"));
    }

    if (run_wedge) {
        // wedge of two 2-chains at their minima; the first part is a retract
        Graph part = chain_graph(2);
        WedgeResult w = wedge_sum({part, part}, {0, 0});
        rep.payload["wedge"] = graph_to_json(w.graph);
        const GraphHom& incl = w.inclusions[0];
        std::vector<int> rmap(w.graph.n);
        rmap[0] = 0;
        rmap[w.inclusions[0].map[1]] = 1;
        rmap[w.inclusions[1].map[1]] = 1;  // collapse the second arm onto the first
        GraphHom retr = GraphHom::make(w.graph, part, rmap);

        MorSymbol si = MorSymbol::from_hom(canonicalize_hom(incl));
        MorSymbol sr = MorSymbol::from_hom(canonicalize_hom(retr));
        auto witness = retract_witness(FormalSum(si), FormalSum(sr));
        rep.add(witness ? CheckResult::pass("retract witness extracted from the wedge inclusion")
                        : CheckResult::fail("retract witness extracted from the wedge inclusion"));

        StagePtr st = build_stage(close_active_set({si, sr}), opt.degree_cap);
        Graph cw = canonical_form(w.graph).canon;
        Graph cp = canonical_form(part).canon;
        GSnapshot gw = g_object(cw, st);
        GSnapshot gp = g_object(cp, st);
        FormalSum idem = ring_multiply(FormalSum(si), FormalSum(sr));  // i after r: endo of W
        PreparedMultiplier mult(*st, idem);
        auto [img, rest] = split_by_idempotent_fn(
            gw.lattice, [&](const SparseVec& v) { return mult.apply(v); });
        bool split_ok = img.rank() + rest.rank() == gw.lattice.rank() &&
                        img.rank() == gp.lattice.rank();
        OrderedJson d;
        d["snapshot_rank"] = gw.lattice.rank();
        d["retract_part_rank"] = img.rank();
        d["complement_rank"] = rest.rank();
        rep.payload["wedge_split"] = std::move(d);
        rep.add(split_ok
                    ? CheckResult::pass("wedge retract induces an idempotent snapshot split")
                    : CheckResult::fail("wedge retract induces an idempotent snapshot split"));
    }
    return rep;
}

}  // namespace homforge
