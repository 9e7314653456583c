#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include "json.hpp"

namespace {

using nlohmann::json;

struct RunResult {
    int exit_code = -1;
    std::string output; // stdout and stderr interleaved
};

RunResult run(const std::string &args) {
    std::string command = std::string(LPOSAT_BIN) + " " + args + " 2>&1";
    FILE *pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult result;
    char buffer[4096];
    size_t got;
    while ((got = fread(buffer, 1, sizeof buffer, pipe)) > 0)
        result.output.append(buffer, got);
    int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

bool has(const std::string &text, const std::string &needle) {
    return text.find(needle) != std::string::npos;
}

std::string data(const char *name) {
    return std::string("\"") + LPOSAT_DATA_DIR + "/" + name + "\"";
}

// Index of the precedence class containing the symbol, or -1.
int class_of(const json &precedence, const std::string &symbol) {
    for (size_t i = 0; i < precedence.size(); ++i)
        for (const auto &member : precedence[i])
            if (member.get<std::string>() == symbol)
                return static_cast<int>(i);
    return -1;
}

std::string temp_file(const char *suffix) {
    return "/tmp/lposat-cli-test-" + std::to_string(::getpid()) + suffix;
}

} // namespace

TEST_CASE("prove: strict success with witness output") {
    RunResult plain = run("prove " + data("bool_norm.trs"));
    CHECK(plain.exit_code == 0);
    CHECK(has(plain.output, "YES"));
    CHECK_FALSE(has(plain.output, "precedence"));

    RunResult modeled =
        run("prove " + data("bool_norm.trs") + " --print-model");
    CHECK(modeled.exit_code == 0);
    CHECK(has(modeled.output, "precedence: "));

    RunResult as_json =
        run("prove " + data("bool_norm.trs") + " --format json");
    CHECK(as_json.exit_code == 0);
    json report = json::parse(as_json.output);
    CHECK(report["verdict"] == "YES");
    CHECK(report["variant"] == "strict");
    CHECK(report["encoding"] == "symbol");
    CHECK(report["scc"] == false);
    const json &prec = report["precedence"];
    CHECK(class_of(prec, "-") < class_of(prec, "*"));
    CHECK(class_of(prec, "*") < class_of(prec, "+"));
    CHECK(report["statistics"]["symbols"] == 5);
    CHECK(report["statistics"]["largest_scc"] == 3);
    CHECK(report["statistics"]["cnf_vars"].get<int>() > 0);
}

TEST_CASE("prove: strict failure is reported without claiming too much") {
    RunResult res = run("prove " + data("idiv.trs"));
    CHECK(res.exit_code == 1);
    CHECK(has(res.output, "NO"));
    CHECK(has(res.output, "does not imply"));

    RunResult as_json = run("prove " + data("idiv.trs") + " --format json");
    CHECK(as_json.exit_code == 1);
    json report = json::parse(as_json.output);
    CHECK(report["verdict"] == "NO");
    CHECK_FALSE(report.contains("precedence"));
}

TEST_CASE("prove: quasi variant equates div and i") {
    RunResult res =
        run("prove " + data("idiv.trs") + " --order quasi --format json");
    CHECK(res.exit_code == 0);
    json report = json::parse(res.output);
    CHECK(report["verdict"] == "YES");
    CHECK(report["variant"] == "quasi");
    const json &prec = report["precedence"];
    int div_class = class_of(prec, "div");
    CHECK(div_class >= 0);
    CHECK(div_class == class_of(prec, "i"));
}

TEST_CASE("prove: every engine configuration agrees") {
    const char *variants[] = {
        "--encoding atom",
        "--scc on",
        "--encoding atom --scc on",
        "--polarity",
        "--encoding atom --polarity --scc on",
    };
    for (const char *extra : variants) {
        CAPTURE(extra);
        CHECK(run("prove " + data("bool_norm.trs") + " " + extra).exit_code ==
              0);
        CHECK(run("prove " + data("idiv.trs") + " " + extra).exit_code == 1);
        CHECK(run("prove " + data("idiv.trs") + " --order quasi " + extra)
                  .exit_code == 0);
    }
}

TEST_CASE("prove: --stats reports instance sizes") {
    RunResult res = run("prove " + data("bool_norm.trs") + " --stats");
    CHECK(res.exit_code == 0);
    CHECK(has(res.output, "symbols: 5 (largest SCC: 3)"));
    CHECK(has(res.output, "cnf: "));
    CHECK(has(res.output, "time: parse "));
}

TEST_CASE("prove: --dimacs dumps the instance") {
    std::string path = temp_file(".cnf");
    RunResult res =
        run("prove " + data("bool_norm.trs") + " --dimacs \"" + path + "\"");
    CHECK(res.exit_code == 0);
    std::ifstream in(path);
    REQUIRE(in.good());
    std::string first_line;
    std::getline(in, first_line);
    CHECK(first_line.rfind("p cnf ", 0) == 0);
    in.close();
    std::remove(path.c_str());
}

TEST_CASE("prove: a zero timeout always trips") {
    RunResult res = run("prove " + data("bool_norm.trs") + " --timeout 0");
    CHECK(res.exit_code == 2);
    CHECK(has(res.output, "error:"));
    CHECK(has(res.output, "budget"));
}

TEST_CASE("prove: external solver round trip through our own binary") {
    // The binary's `solve` subcommand speaks the competition output format,
    // so it can serve as the external solver for itself.
    std::string external =
        std::string(" --solver \"external:") + LPOSAT_BIN + " solve\"";
    CHECK(run("prove " + data("idiv.trs") + " --order quasi" + external)
              .exit_code == 0);
    CHECK(run("prove " + data("idiv.trs") + external).exit_code == 1);
    CHECK(run("prove " + data("bool_norm.trs") + external).exit_code == 0);
}

TEST_CASE("solve subcommand speaks the competition format") {
    std::string sat_path = temp_file("-sat.cnf");
    std::ofstream(sat_path) << "p cnf 2 1\n1 -2 0\n";
    RunResult sat = run("solve \"" + sat_path + "\"");
    CHECK(sat.exit_code == 10);
    CHECK(has(sat.output, "s SATISFIABLE"));
    // The internal solver is deterministic (phase saving starts at false),
    // so the witness line is stable.
    CHECK(has(sat.output, "v -1 -2 0"));
    std::remove(sat_path.c_str());

    std::string unsat_path = temp_file("-unsat.cnf");
    std::ofstream(unsat_path) << "p cnf 1 2\n1 0\n-1 0\n";
    RunResult unsat = run("solve \"" + unsat_path + "\"");
    CHECK(unsat.exit_code == 20);
    CHECK(has(unsat.output, "s UNSATISFIABLE"));
    std::remove(unsat_path.c_str());
}

TEST_CASE("batch: bundled systems under the default options") {
    RunResult res = run(std::string("batch \"") + LPOSAT_DATA_DIR + "\"");
    CHECK(res.exit_code == 0);
    CHECK(has(res.output,
              "files: 2  yes: 1  no: 1  skipped: 0  errors: 0"));
    CHECK(has(res.output, "YES\t"));
    CHECK(has(res.output, "NO\t"));
    CHECK(has(res.output, "time: total "));
}

TEST_CASE("batch: JSON rows are sorted and parallel runs agree") {
    RunResult res = run(std::string("batch \"") + LPOSAT_DATA_DIR +
                        "\" --format json");
    CHECK(res.exit_code == 0);
    json summary = json::parse(res.output);
    CHECK(summary["files"] == 2);
    CHECK(summary["yes"] == 1);
    CHECK(summary["no"] == 1);
    REQUIRE(summary["rows"].size() == 2);
    CHECK(has(summary["rows"][0]["path"], "bool_norm.trs"));
    CHECK(summary["rows"][0]["outcome"] == "YES");
    CHECK(has(summary["rows"][1]["path"], "idiv.trs"));
    CHECK(summary["rows"][1]["outcome"] == "NO");

    RunResult parallel = run(std::string("batch \"") + LPOSAT_DATA_DIR +
                             "\" --format json --jobs 2");
    CHECK(parallel.exit_code == 0);
    json with_jobs = json::parse(parallel.output);
    CHECK(with_jobs["yes"] == 1);
    CHECK(with_jobs["no"] == 1);
    CHECK(with_jobs["rows"][0]["path"] == summary["rows"][0]["path"]);
}

TEST_CASE("batch: unsupported and broken files are counted, not fatal") {
    RunResult res = run(std::string("batch \"") + LPOSAT_TEST_DATA_DIR +
                        "\" --format json");
    CHECK(res.exit_code == 2); // parse errors make the batch exit nonzero
    json summary = json::parse(res.output);
    CHECK(summary["files"] == 3);
    CHECK(summary["yes"] == 0);
    CHECK(summary["skipped"] == 1); // the THEORY file
    CHECK(summary["errors"] == 2);  // unbound variable + bad syntax
    for (const auto &row : summary["rows"]) {
        if (has(row["path"], "with_theory")) {
            CHECK(row["outcome"] == "SKIPPED");
            CHECK(has(row["detail"], "THEORY"));
        } else {
            CHECK(row["outcome"] == "ERROR");
        }
    }
}

TEST_CASE("command line errors exit with 2") {
    RunResult missing = run("prove /nonexistent/file.trs");
    CHECK(missing.exit_code == 2);
    CHECK(has(missing.output, "error:"));

    RunResult bad_solver =
        run("prove " + data("idiv.trs") + " --solver pixie");
    CHECK(bad_solver.exit_code == 2);
    CHECK(has(bad_solver.output, "error:"));

    RunResult no_dir = run("batch /nonexistent/dir");
    CHECK(no_dir.exit_code == 2);

    // Option validation is handled by the argument parser itself.
    CHECK(run("prove " + data("idiv.trs") + " --order sometimes").exit_code !=
          0);
    CHECK(run("prove " + data("idiv.trs") + " --format yaml").exit_code != 0);
    CHECK(run("").exit_code != 0); // a subcommand is required
}
