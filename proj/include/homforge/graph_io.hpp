#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "homforge/corner.hpp"
#include "homforge/formal_sum.hpp"
#include "homforge/graph.hpp"
#include "homforge/lattice.hpp"

namespace homforge {

using OrderedJson = nlohmann::ordered_json;

/// Text format, one graph per block:
///   graph <id> <n>
///   arc <u> <v>
///   ...
/// terminated by a blank line or end of stream.
inline std::vector<Graph> parse_graphs(std::istream& in) {
    std::vector<Graph> out;
    std::string line;
    int lineno = 0;
    bool in_block = false;
    std::string id;
    int n = 0;
    std::vector<Arc> arcs;
    auto flush = [&]() {
        if (!in_block) return;
        out.push_back(Graph::make(id, n, std::move(arcs)));
        arcs.clear();
        in_block = false;
    };
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string word;
        if (!(ls >> word)) {  // blank line terminates a block
            flush();
            continue;
        }
        if (word == "graph") {
            flush();
            if (!(ls >> id >> n)) throw ParseError(lineno, "expected: graph <id> <n>");
            if (n < 0) throw ParseError(lineno, "negative vertex count");
            in_block = true;
        } else if (word == "arc") {
            if (!in_block) throw ParseError(lineno, "arc before any graph header");
            int u, v;
            if (!(ls >> u >> v)) throw ParseError(lineno, "expected: arc <u> <v>");
            if (u < 0 || u >= n || v < 0 || v >= n)
                throw ParseError(lineno, "arc endpoint out of range");
            arcs.push_back({u, v});
        } else if (word[0] == '#') {
            continue;
        } else {
            throw ParseError(lineno, "unknown directive '" + word + "'");
        }
        std::string extra;
        if (ls >> extra && extra[0] != '#')
            throw ParseError(lineno, "trailing tokens after directive");
    }
    flush();
    return out;
}

inline void write_graph(std::ostream& os, const Graph& g) {
    os << "graph " << (g.id.empty() ? g.content_key() : g.id) << " " << g.n << "\n";
    for (const auto& [u, v] : g.arcs) os << "arc " << u << " " << v << "\n";
    os << "\n";
}

inline OrderedJson graph_to_json(const Graph& g) {
    OrderedJson j;
    j["id"] = g.id.empty() ? g.content_key() : g.id;
    j["n"] = g.n;
    OrderedJson arcs = OrderedJson::array();
    for (const auto& [u, v] : g.arcs) arcs.push_back({u, v});
    j["arcs"] = std::move(arcs);
    return j;
}

inline Graph graph_from_json(const OrderedJson& j) {
    std::vector<Arc> arcs;
    for (const auto& a : j.at("arcs")) arcs.push_back({a.at(0).get<int>(), a.at(1).get<int>()});
    return Graph::make(j.value("id", std::string("g")), j.at("n").get<int>(), std::move(arcs));
}

inline OrderedJson hom_to_json(const GraphHom& h) {
    OrderedJson j;
    j["dom"] = h.dom.id.empty() ? h.dom.content_key() : h.dom.id;
    j["cod"] = h.cod.id.empty() ? h.cod.content_key() : h.cod.id;
    j["map"] = h.map;
    return j;
}

/// FormalSum as a list of {dom, cod, map, coeff}; the unit term, when
/// present, is {unit: true, coeff}. Coefficients are decimal strings.
inline OrderedJson formal_sum_to_json(const FormalSum& a) {
    OrderedJson terms = OrderedJson::array();
    for (const auto& [s, c] : a.terms()) {
        OrderedJson t;
        if (s.unit) {
            t["unit"] = true;
        } else {
            t["dom"] = s.dom.id;
            t["cod"] = s.cod.id;
            t["map"] = s.map;
        }
        t["coeff"] = c.str();
        terms.push_back(std::move(t));
    }
    return terms;
}

inline OrderedJson sparse_vec_to_json(const SparseVec& v) {
    OrderedJson j = OrderedJson::array();
    for (const auto& [c, x] : v) j.push_back({c, x.str()});
    return j;
}

inline OrderedJson lattice_to_json(const Lattice& l) {
    OrderedJson j;
    j["ambient"] = l.ambient();
    j["rank"] = l.rank();
    OrderedJson rows = OrderedJson::array();
    for (const auto& r : l.basis()) rows.push_back(sparse_vec_to_json(r));
    j["basis"] = std::move(rows);
    return j;
}

inline OrderedJson stage_to_json(const CornerStage& st) {
    OrderedJson j;
    OrderedJson syms = OrderedJson::array();
    for (const auto& s : st.active) syms.push_back(s.label());
    j["active"] = std::move(syms);
    j["degree_cap"] = st.degree_cap;
    j["markers"] = st.num_markers;
    j["monomials"] = st.num_monomials;
    j["ambient_dim"] = st.ambient_dim;
    j["truncated"] = st.truncated;
    j["lattice"] = lattice_to_json(st.lattice);
    OrderedJson gens = OrderedJson::array();
    for (const auto& g : st.generator_log) gens.push_back(sparse_vec_to_json(g));
    j["generators"] = std::move(gens);
    return j;
}

}  // namespace homforge
