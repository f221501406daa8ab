// homforge: finite graph homomorphisms, their category algebra, a symbolic
// endomorphism-ring stage, and the orthogonality/reflection machinery, all
// behind one command-line surface. See README.md for formats and examples.

#include <CLI11.hpp>

#include "homforge/commands.hpp"

using namespace homforge;

int main(int argc, char** argv) {
    CLI::App app{"homforge: graph homomorphism algebra workbench"};
    app.require_subcommand(1);

    CliOptions opt;
    std::string file_x, file_y, experiment;
    int max_vertices = 8, count = 2;
    std::string which = "all";
    std::string demo_what = "section5";

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--seed", opt.seed, "seed for randomized property suites");
        cmd->add_option("--out", opt.out_path, "write the report to this path");
        cmd->add_option("--format", opt.format, "json or text")
            ->check(CLI::IsMember({"json", "text"}));
        cmd->add_option("--threads", opt.threads, "worker pool size");
    };

    CLI::App* homs = app.add_subcommand("homs", "enumerate all homomorphisms X -> Y");
    homs->add_option("x", file_x, "graph file for X")->required();
    homs->add_option("y", file_y, "graph file for Y")->required();
    add_common(homs);

    CLI::App* canon = app.add_subcommand("canon", "canonical forms of the input graphs");
    canon->add_option("file", file_x, "graph file")->required();
    add_common(canon);

    CLI::App* embed = app.add_subcommand("embed", "gadget embedding into nonempty graphs");
    embed->add_option("file", file_x, "graph file")->required();
    add_common(embed);

    CLI::App* gamma = app.add_subcommand(
        "gamma-check", "roundtrip/injectivity/ring checks for the natural map over a corpus");
    gamma->add_option("--corpus-max-n", opt.corpus_max_n, "corpus vertex bound (<= 4)");
    gamma->add_option("--degree-cap", opt.degree_cap, "stage monomial degree cap");
    gamma->add_option("--trials", opt.trials, "randomized sums per pair");
    add_common(gamma);

    CLI::App* stage = app.add_subcommand("corner-stage", "build and dump a stage over a file");
    stage->add_option("file", file_x, "graph file")->required();
    stage->add_option("--degree-cap", opt.degree_cap, "stage monomial degree cap");
    add_common(stage);

    CLI::App* reflect = app.add_subcommand("reflect", "run reflections from an experiment file");
    reflect->add_option("experiment", experiment, "experiment JSON")->required();
    reflect->add_option("--reflect-cap", opt.reflect_cap, "small-object iteration cap");
    add_common(reflect);

    CLI::App* grid = app.add_subcommand("ortho-grid", "orthogonality grid over an experiment");
    grid->add_option("experiment", experiment, "experiment JSON")->required();
    add_common(grid);

    CLI::App* demo = app.add_subcommand("demo", "worked finite demos");
    demo->add_option("what", demo_what, "demo family (section5)")->required();
    demo->add_option("--which", which, "rigid, chains, wedge or all")
        ->check(CLI::IsMember({"rigid", "chains", "wedge", "all"}));
    demo->add_option("--degree-cap", opt.degree_cap, "stage monomial degree cap");
    add_common(demo);

    CLI::App* rigid = app.add_subcommand("rigid-search", "search for a rigid system");
    rigid->add_option("--max-vertices", max_vertices, "vertex bound per member");
    rigid->add_option("--count", count, "system size");
    add_common(rigid);

    CLI11_PARSE(app, argc, argv);

    Timer timer;
    try {
        Report rep;
        if (homs->parsed()) rep = cmd_homs(file_x, file_y, opt);
        else if (canon->parsed()) rep = cmd_canon(file_x, opt);
        else if (embed->parsed()) rep = cmd_embed(file_x, opt);
        else if (gamma->parsed()) rep = cmd_gamma_check(opt);
        else if (stage->parsed()) rep = cmd_corner_stage(file_x, opt);
        else if (reflect->parsed()) rep = cmd_reflect(experiment, opt);
        else if (grid->parsed()) rep = cmd_ortho_grid(experiment, opt);
        else if (rigid->parsed()) rep = cmd_rigid_search(max_vertices, count, opt);
        else if (demo->parsed()) {
            if (demo_what != "section5") {
                std::cerr << "unknown demo '" << demo_what << "' (available: section5)\n";
                return exit_usage;
            }
            rep = cmd_demo_section5(which, opt);
        } else {
            return exit_usage;
        }
        return emit_report(rep, timer, opt.out_path, opt.format);
    } catch (const ParseError& e) {
        std::cerr << e.what() << "\n";
        return exit_usage;
    } catch (const GuardExceeded& e) {
        std::cerr << "guard exceeded: " << e.what() << "\n";
        return exit_guard;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    }
}
