#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "homforge/commands.hpp"
#include "homforge/graph_io.hpp"
#include "homforge/report.hpp"

using namespace homforge;

TEST_CASE("graph text roundtrip") {
    Graph g = Graph::make("demo", 3, {{0, 1}, {1, 2}, {0, 0}});
    std::ostringstream os;
    write_graph(os, g);
    std::istringstream is(os.str());
    std::vector<Graph> back = parse_graphs(is);
    REQUIRE(back.size() == 1);
    CHECK(back[0] == g);
    CHECK(back[0].id == "demo");
}

TEST_CASE("graph text parses streams and comments") {
    std::istringstream is(
        "# corpus\n"
        "graph a 2\n"
        "arc 0 1\n"
        "\n"
        "graph b 1\n"
        "arc 0 0\n");
    std::vector<Graph> gs = parse_graphs(is);
    REQUIRE(gs.size() == 2);
    CHECK(gs[0].arcs.size() == 1);
    CHECK(gs[1].has_arc(0, 0));
}

TEST_CASE("graph text reports line numbers on errors") {
    std::istringstream bad1("graph a 2\narc 0 5\n");
    try {
        parse_graphs(bad1);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
    }
    std::istringstream bad2("arc 0 1\n");
    CHECK_THROWS_AS(parse_graphs(bad2), ParseError);
    std::istringstream bad3("graph x\n");
    CHECK_THROWS_AS(parse_graphs(bad3), ParseError);
    std::istringstream bad4("graph a 2\nedge 0 1\n");
    CHECK_THROWS_AS(parse_graphs(bad4), ParseError);
}

TEST_CASE("graph json roundtrip") {
    Graph g = Graph::make("j", 2, {{0, 1}, {1, 1}});
    Graph back = graph_from_json(graph_to_json(g));
    CHECK(back == g);
}

TEST_CASE("formal sum json encoding") {
    Graph l2 = canonical_form(chain_graph(2)).canon;
    FormalSum s(MorSymbol::identity_of(l2), -4);
    s.add(MorSymbol::unit_symbol(), 7);
    OrderedJson j = formal_sum_to_json(s);
    REQUIRE(j.size() == 2);
    CHECK(j[0]["unit"] == true);  // unit sorts first
    CHECK(j[0]["coeff"] == "7");
    CHECK(j[1]["coeff"] == "-4");
}

TEST_CASE("reports are byte-identical apart from timing") {
    Report a, b;
    a.command = b.command = "demo";
    a.config = b.config = {{"seed", 1}};
    a.add(CheckResult::pass("x"));
    b.add(CheckResult::pass("x"));
    a.timing_ms = 1.0;
    b.timing_ms = 2.0;
    OrderedJson ja = a.to_json(), jb = b.to_json();
    ja.erase("timing_ms");
    jb.erase("timing_ms");
    CHECK(ja.dump() == jb.dump());
}

TEST_CASE("report exit codes") {
    Report r;
    r.command = "c";
    CHECK(r.exit_code() == exit_ok);
    r.add(CheckResult::pass("p"));
    CHECK(r.exit_code() == exit_ok);
    r.add(CheckResult::skipped("s"));
    CHECK(r.exit_code() == exit_ok);
    Report all_skipped;
    all_skipped.add(CheckResult::skipped("s"));
    CHECK(all_skipped.exit_code() == exit_guard);
    r.add(CheckResult::fail("f"));
    CHECK(r.exit_code() == exit_fail);
}

TEST_CASE("experiment files parse and validate") {
    std::string path = "exp_test.json";
    {
        std::ofstream os(path);
        os << R"({
            "graphs": [
                {"id": "pt", "n": 1, "arcs": []},
                {"id": "arc", "n": 2, "arcs": [[0, 1]]}
            ],
            "morphisms": [
                {"id": "src", "dom": "pt", "cod": "arc", "map": [0]}
            ],
            "S": ["src"],
            "objects": ["pt"],
            "cap": 4
        })";
    }
    Experiment ex = parse_experiment(path);
    CHECK(ex.graphs.size() == 2);
    CHECK(ex.morphisms.size() == 1);
    CHECK(ex.s_ids == std::vector<std::string>{"src"});
    CHECK(ex.cap == 4);

    {
        std::ofstream os(path);
        os << R"({"graphs": [], "morphisms": [{"dom": "nope", "cod": "nope", "map": []}]})";
    }
    CHECK_THROWS_AS(parse_experiment(path), Error);
    {
        std::ofstream os(path);
        os << "{not json";
    }
    CHECK_THROWS_AS(parse_experiment(path), ParseError);
    std::remove(path.c_str());
}

TEST_CASE("stage json dump carries the basis in decimal strings") {
    Graph pt = canonical_form(single_vertex(false)).canon;
    StagePtr st = build_stage({MorSymbol::unit_symbol(), MorSymbol::identity_of(pt)}, 1);
    OrderedJson j = stage_to_json(*st);
    CHECK(j["degree_cap"] == 1);
    CHECK(j["ambient_dim"] == 6);
    CHECK(j["lattice"]["rank"] == 4);
    for (const auto& row : j["lattice"]["basis"])
        for (const auto& entry : row) CHECK(entry[1].is_string());
}
