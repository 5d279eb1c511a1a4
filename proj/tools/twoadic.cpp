#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "twoadic/cli.hpp"

namespace {

using twoadic::cli::Command;
using twoadic::cli::RunConfig;

struct Options {
    std::string input, output, output_dir, tree, format = "json", direction = "nd", method = "fast";
    double s = 0.0, alpha = 0.0, p = 0.0;
    int depth = 0, resolution = 0;
};

CLI::App* add_command(CLI::App& app, const char* name, const char* help, Options& o) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("-i,--input", o.input, "input file");
    sub->add_option("-o,--output", o.output, "main output file");
    sub->add_option("--output-dir", o.output_dir, "output directory (default $TWOADIC_OUTPUT_DIR or .)");
    sub->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    return sub;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Analysis on 2-adic integers and resistive dyadic trees"};
    app.require_subcommand(1);
    Options o;
    RunConfig cfg;

    auto* transform = add_command(app, "transform", "Fourier transform of a step function", o);
    transform->add_flag("--inverse", cfg.inverse, "read a spectrum and emit the step function");

    auto* norm = add_command(app, "norm", "Lp, Sobolev and approximation norms", o);
    norm->add_option("--s", o.s, "Sobolev index");
    norm->add_option("--p", o.p, "extra Lp exponent");

    auto* trace = add_command(app, "trace", "trace of a tree field with convergence report", o);
    trace->add_option("--s", o.s, "Sobolev index (default 0)");
    trace->add_option("--alpha", o.alpha, "geometric resistance ratio");
    trace->add_option("--tree", o.tree, "tree config file");
    trace->add_option("--depth", o.depth, "depth of the sampled field");
    trace->add_option("--seed", cfg.seed, "sampling seed");

    auto* ventilate = add_command(app, "ventilate", "Neumann-Dirichlet and Dirichlet-Neumann maps", o);
    ventilate->add_option("--alpha", o.alpha, "geometric resistance ratio");
    ventilate->add_option("--tree", o.tree, "tree config file");
    ventilate->add_option("--direction", o.direction, "nd or dn")->check(CLI::IsMember({"nd", "dn"}));
    ventilate->add_option("--method", o.method, "finite solver: dense or fast")->check(CLI::IsMember({"dense", "fast"}));

    auto* solve = add_command(app, "solve-tree", "leaf fluxes of a finite resistor tree", o);
    solve->add_option("--alpha", o.alpha, "geometric resistance ratio");
    solve->add_option("--tree", o.tree, "tree config file");
    solve->add_option("--depth", o.depth, "tree depth");
    solve->add_option("--method", o.method, "dense or fast")->check(CLI::IsMember({"dense", "fast"}));

    add_command(app, "embed", "pullback of a grid function to Z2", o);

    auto* report = add_command(app, "report", "norm equivalence and continuity ensembles", o);
    report->add_option("--s", o.s, "Sobolev index")->required();
    report->add_option("--alpha", o.alpha, "geometric resistance ratio")->required();
    report->add_option("--seed", cfg.seed, "ensemble seed");
    report->add_option("--resolution", o.resolution, "largest resolution (default 10)");
    report->add_option("--samples", cfg.samples, "functions per resolution");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << twoadic::io::error_json("usage", e.what()).dump() << "\n";
        return twoadic::cli::kUsageError;
    }

    const std::map<CLI::App*, Command> commands{
        {transform, Command::Transform}, {norm, Command::Norm},       {trace, Command::Trace},
        {ventilate, Command::Ventilate}, {solve, Command::SolveTree}, {app.get_subcommand("embed"), Command::Embed},
        {report, Command::Report}};
    CLI::App* chosen = app.get_subcommands().front();
    cfg.command = commands.at(chosen);

    auto given = [&](const char* flag) { return chosen->count(flag) > 0; };
    if (given("--input")) cfg.input = o.input;
    if (given("--output")) cfg.output = o.output;
    if (given("--output-dir")) cfg.output_dir = o.output_dir;
    if (chosen->get_option_no_throw("--tree") && given("--tree")) cfg.tree = o.tree;
    if (chosen->get_option_no_throw("--s") && given("--s")) cfg.s = o.s;
    if (chosen->get_option_no_throw("--alpha") && given("--alpha")) cfg.alpha = o.alpha;
    if (chosen->get_option_no_throw("--p") && given("--p")) cfg.p = o.p;
    if (chosen->get_option_no_throw("--depth") && given("--depth")) cfg.depth = o.depth;
    if (chosen->get_option_no_throw("--resolution") && given("--resolution")) cfg.resolution = o.resolution;
    cfg.format = o.format == "csv" ? twoadic::cli::Format::Csv : twoadic::cli::Format::Json;
    cfg.direction = o.direction == "dn" ? twoadic::cli::Direction::DN : twoadic::cli::Direction::ND;
    cfg.method = o.method == "dense" ? twoadic::SolverMethod::Dense : twoadic::SolverMethod::Fast;

    return twoadic::cli::run(cfg);
}
