#include <fstream>
#include <iostream>
#include <map>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>

#include "frobd4/cli.hpp"

namespace {

using frobd4::cli::Command;
using frobd4::cli::Format;
using frobd4::cli::Verb;

struct Options {
    std::string target;
    std::string order = "4";
    std::string format;
    std::string out;
};

CLI::App* add_verb(CLI::App& app, const std::string& name, const std::string& help, Options& opts)
{
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("target", opts.target, "object, suite or table name")->required();
    sub->add_option("--order", opts.order, "truncation order, N or N/24 (default 4)");
    sub->add_option("--format", opts.format, "text, json or csv")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    sub->add_option("--out", opts.out, "write output to FILE");
    return sub;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact q-series and Jacobi form computations for the D4 Frobenius manifold"};
    app.require_subcommand(1);
    Options opts;
    const std::map<std::string, Verb> verbs = {
        {"expand", Verb::expand}, {"verify", Verb::verify}, {"table", Verb::table}, {"export", Verb::exportv}};
    add_verb(app, "expand", "print a named series or Jacobi form", opts);
    add_verb(app, "verify", "run a verification suite", opts);
    add_verb(app, "table", "print the J0*, J1* or duality tables", opts);
    add_verb(app, "export", "write an object, table or suite result as JSON or CSV", opts);
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return frobd4::cli::kExitUnknown;
    }

    Command cmd;
    const std::string verb = app.get_subcommands().front()->get_name();
    cmd.verb = verbs.at(verb);
    cmd.target = opts.target;
    try {
        cmd.order = frobd4::cli::parse_order(opts.order);
    } catch (const std::exception& e) {
        std::cerr << "error: bad --order '" << opts.order << "': " << e.what() << "\n";
        return frobd4::cli::kExitUnknown;
    }
    const std::string format = opts.format.empty() ? (cmd.verb == Verb::exportv ? "json" : "text") : opts.format;
    cmd.format = format == "json" ? Format::json : format == "csv" ? Format::csv : Format::text;

    if (opts.out.empty()) {
        return frobd4::cli::run(cmd, std::cout, std::cerr);
    }
    std::ofstream file(opts.out);
    if (!file) {
        std::cerr << "error: cannot open " << opts.out << "\n";
        return frobd4::cli::kExitUnknown;
    }
    return frobd4::cli::run(cmd, file, std::cerr);
}
