#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "lposat/pipeline.hpp"

namespace {

/// Runs the built-in CDCL solver on a DIMACS file and prints the result in
/// the competition format, so the binary can serve as its own
/// `--solver external:` command.
int run_solve(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot read " + path);
    std::ostringstream text;
    text << in.rdbuf();
    lposat::CnfInstance cnf = lposat::parse_dimacs(text.str());
    lposat::SatResult result = lposat::solve(cnf);
    if (result.status == lposat::SolveStatus::Sat) {
        std::cout << "s SATISFIABLE\nv";
        for (int v = 1; v <= cnf.var_count; ++v)
            std::cout << ' ' << (result.model[v] ? v : -v);
        std::cout << " 0\n";
        return 10;
    }
    std::cout << "s UNSATISFIABLE\n";
    return 20;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"SAT-based LPO termination prover for term rewrite systems"};
    app.require_subcommand(1);

    std::string order = "strict";
    std::string encoding = "symbol";
    std::string scc = "off";
    std::string solver = "internal";
    std::string format = "text";
    std::string dimacs;
    double timeout = -1.0;
    bool stats = false;
    bool print_model = false;
    bool polarity = false;

    auto add_common = [&](CLI::App *cmd) {
        cmd->add_option("--order", order, "Precedence flavour: strict | quasi")
            ->check(CLI::IsMember({"strict", "quasi"}))
            ->capture_default_str();
        cmd->add_option("--encoding", encoding,
                        "Propositional encoding: symbol | atom")
            ->check(CLI::IsMember({"symbol", "atom"}))
            ->capture_default_str();
        cmd->add_option("--scc", scc,
                        "Decompose the constraint by strongly connected"
                        " components: on | off")
            ->check(CLI::IsMember({"on", "off"}))
            ->capture_default_str();
        cmd->add_option("--solver", solver,
                        "internal | external:<command taking a DIMACS file>")
            ->capture_default_str();
        cmd->add_option("--timeout", timeout, "Solving budget in seconds");
        cmd->add_flag("--polarity", polarity,
                      "Emit polarity-reduced CNF instead of full"
                      " biconditionals");
        cmd->add_option("--format", format, "Report format: text | json")
            ->check(CLI::IsMember({"text", "json"}))
            ->capture_default_str();
    };

    std::string input;
    CLI::App *prove =
        app.add_subcommand("prove", "Decide LPO termination of one system");
    prove->add_option("file", input, "Term rewrite system in TPDB format")
        ->required();
    add_common(prove);
    prove->add_flag("--stats", stats, "Print instance sizes and stage times");
    prove->add_flag("--print-model", print_model,
                    "Print the witness precedence on YES");
    prove->add_option("--dimacs", dimacs,
                      "Also write the CNF instance to this path");

    std::string directory;
    int jobs = 1;
    CLI::App *batch = app.add_subcommand(
        "batch", "Prove every .trs file under a directory (recursively)");
    batch->add_option("directory", directory, "Directory to scan")->required();
    add_common(batch);
    batch->add_option("--jobs", jobs, "Concurrent prove pipelines")
        ->check(CLI::PositiveNumber);

    std::string cnf_path;
    CLI::App *solve_cmd = app.add_subcommand(
        "solve", "Run the built-in SAT solver on a DIMACS file");
    solve_cmd->add_option("file", cnf_path, "CNF instance in DIMACS format")
        ->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve_cmd->parsed())
            return run_solve(cnf_path);

        lposat::ProveOptions options;
        options.variant = order == "quasi" ? lposat::OrderVariant::Quasi
                                           : lposat::OrderVariant::Strict;
        options.encoding = encoding == "atom" ? lposat::EncodingKind::Atom
                                              : lposat::EncodingKind::Symbol;
        options.scc = scc == "on";
        options.timeout_seconds = timeout;
        options.polarity_tseitin = polarity;
        options.dimacs_path = dimacs;
        if (solver != "internal") {
            if (solver.rfind("external:", 0) != 0)
                throw std::runtime_error(
                    "--solver expects internal or external:<command>");
            options.external_solver = solver.substr(9);
            if (options.external_solver.empty())
                throw std::runtime_error("--solver external: needs a command");
        }

        if (prove->parsed()) {
            lposat::ProveReport report = lposat::prove_file(input, options);
            std::cout << (format == "json"
                              ? lposat::render_json(report)
                              : lposat::render_text(report, stats,
                                                    print_model));
            return report.yes ? 0 : 1;
        }

        lposat::BatchSummary summary =
            lposat::run_batch(directory, options, jobs);
        std::cout << (format == "json" ? lposat::render_json(summary)
                                       : lposat::render_text(summary));
        return summary.errors > 0 ? 2 : 0;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
