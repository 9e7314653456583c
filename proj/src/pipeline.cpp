#include "lposat/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <thread>
#include <unistd.h>

#include "json.hpp"

namespace lposat {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::string run_command(const std::string &command) {
    FILE *pipe = popen(command.c_str(), "r");
    if (!pipe)
        throw std::runtime_error("failed to run: " + command);
    std::string output;
    char buffer[4096];
    size_t got;
    while ((got = fread(buffer, 1, sizeof buffer, pipe)) > 0)
        output.append(buffer, got);
    pclose(pipe);
    return output;
}

std::filesystem::path fresh_temp_path() {
    static std::atomic<uint64_t> counter{0};
    std::ostringstream name;
    name << "lposat-" << ::getpid() << '-' << counter++ << ".cnf";
    return std::filesystem::temp_directory_path() / name.str();
}

struct Stage {
    const ProveOptions &options;
    ProveStats &stats;
    double deadline_seconds; // negative: none
    Clock::time_point start = Clock::now();

    double remaining() const {
        if (deadline_seconds < 0)
            return -1.0;
        return deadline_seconds -
               std::chrono::duration<double>(Clock::now() - start).count();
    }

    /// Encodes, converts, solves; returns the decoded solution on SAT.
    std::optional<Solution> solve_constraint(const PoFormula *phi) {
        Clock::time_point t0 = Clock::now();
        PropArena arena;
        SymbolInstance symbol_instance;
        AtomInstance atom_instance;
        const PropFormula *formula;
        if (options.encoding == EncodingKind::Symbol) {
            symbol_instance = encode_symbol_based(arena, phi);
            formula = symbol_instance.formula;
        } else {
            atom_instance = encode_atom_based(arena, phi);
            formula = atom_instance.formula;
        }
        CnfInstance cnf = tseitin(formula, arena, options.polarity_tseitin);
        stats.encode_ms += ms_since(t0);
        stats.cnf_vars += cnf.var_count;
        stats.cnf_clauses += static_cast<int>(cnf.clauses.size());

        t0 = Clock::now();
        SatResult result = run_solver(cnf);
        stats.solve_ms += ms_since(t0);
        if (result.status == SolveStatus::Unsat)
            return std::nullopt;

        if (options.encoding == EncodingKind::Symbol)
            return decode_solution(result.model, symbol_instance);
        return decode_solution(result.model, atom_instance);
    }

    SatResult run_solver(const CnfInstance &cnf) {
        if (deadline_seconds >= 0 && remaining() <= 0)
            throw TimeoutError("time budget exhausted before solving");
        SatResult result;
        if (options.external_solver.empty()) {
            SolverLimits limits;
            limits.max_seconds = remaining();
            result = solve(cnf, limits);
            if (result.status == SolveStatus::Limit)
                throw TimeoutError("solver exceeded the time budget");
            return result;
        }
        std::filesystem::path path = fresh_temp_path();
        std::ofstream(path) << write_dimacs(cnf);
        std::string output =
            run_command(options.external_solver + " '" + path.string() + "'");
        std::error_code ec;
        std::filesystem::remove(path, ec);
        result = read_external_result(output, cnf.var_count);
        if (result.status == SolveStatus::Limit)
            throw TimeoutError("external solver reported UNKNOWN");
        if (result.status == SolveStatus::Sat &&
            !verify_model(cnf, result.model))
            throw std::runtime_error(
                "external solver returned a model that fails its clauses");
        return result;
    }
};

/// Dense per-component solution: send the decoded values through the
/// model/linearization round-trip so they land in {1..m}.
Solution normalize_dense(const Solution &theta) {
    std::set<std::string> symbols;
    for (const auto &[f, v] : theta)
        symbols.insert(f);
    return linearize_model(symbols, solution_to_model(theta, symbols));
}

/// Stacks per-component solutions into one global solution: components in
/// topological order of the condensation get strictly descending bands of
/// values, so every cross-component atom of the original constraint
/// becomes true.
Solution merge_component_solutions(
    const std::vector<std::vector<std::string>> &components,
    const std::vector<Solution> &part_solutions) {
    std::vector<int> band(components.size(), 1);
    std::vector<const Solution *> by_component(components.size(), nullptr);

    for (const Solution &part : part_solutions) {
        if (part.empty())
            continue;
        const std::string &witness = part.begin()->first;
        for (size_t c = 0; c < components.size(); ++c) {
            if (std::find(components[c].begin(), components[c].end(),
                          witness) != components[c].end()) {
                by_component[c] = &part;
                for (const auto &[f, v] : part)
                    band[c] = std::max(band[c], v);
                break;
            }
        }
    }

    int offset = 0;
    for (int size : band)
        offset += size;

    Solution theta;
    for (size_t c = 0; c < components.size(); ++c) {
        if (by_component[c])
            for (const auto &[f, v] : *by_component[c])
                theta[f] = offset - band[c] + v;
        // Members the component's restriction never mentions (it collapsed
        // around them) still need a value inside the band.
        for (const std::string &f : components[c])
            theta.emplace(f, offset);
        offset -= band[c];
    }
    return theta;
}

} // namespace

ProveReport prove_text(const std::string &text, const ProveOptions &options) {
    ProveReport report;
    report.variant = options.variant;
    report.encoding = options.encoding;
    report.scc = options.scc;

    Clock::time_point t0 = Clock::now();
    Trs trs = parse_trs(text);
    report.stats.parse_ms = ms_since(t0);
    report.stats.symbols = static_cast<int>(trs.signature.size());

    t0 = Clock::now();
    PoArena po;
    const PoFormula *phi = trs_constraint(po, trs, options.variant);
    report.stats.unfold_ms = ms_since(t0);

    DomainGraph graph = domain_graph(phi);
    std::vector<std::vector<std::string>> components = graph.sccs();
    for (const std::vector<std::string> &component : components)
        report.stats.largest_scc = std::max(
            report.stats.largest_scc, static_cast<int>(component.size()));

    Stage stage{options, report.stats, options.timeout_seconds};

    if (!options.dimacs_path.empty()) {
        PropArena arena;
        const PropFormula *formula =
            options.encoding == EncodingKind::Symbol
                ? encode_symbol_based(arena, phi).formula
                : encode_atom_based(arena, phi).formula;
        std::ofstream(options.dimacs_path)
            << write_dimacs(tseitin(formula, arena, options.polarity_tseitin));
    }

    std::optional<Solution> witness;
    if (!options.scc || phi->kind == PoKind::True ||
        phi->kind == PoKind::False) {
        witness = stage.solve_constraint(phi);
    } else {
        bool all_parts_sat = true;
        std::vector<Solution> parts;
        for (const PoFormula *part : scc_partition(po, phi)) {
            std::optional<Solution> theta = stage.solve_constraint(part);
            if (!theta) {
                all_parts_sat = false;
                break;
            }
            parts.push_back(normalize_dense(*theta));
        }
        if (all_parts_sat) {
            Solution merged = merge_component_solutions(components, parts);
            if (eval(phi, merged)) {
                witness = std::move(merged);
            } else {
                // Per-component witnesses need not recombine when a
                // disjunction couples distinct components; decide on the
                // whole formula instead.
                report.stats.scc_fallback = true;
                witness = stage.solve_constraint(phi);
            }
        }
    }

    report.yes = witness.has_value();
    if (report.yes) {
        Solution theta = std::move(*witness);
        // Symbols of the system that the constraint never mentions are
        // unconstrained; report them below everything else.
        int bottom = 0;
        for (const auto &[f, v] : theta)
            bottom = std::min(bottom, v - 1);
        for (const auto &[f, arity] : trs.signature)
            theta.emplace(f, bottom);
        report.solution = theta;
        report.precedence = precedence_of(theta);
    }
    return report;
}

ProveReport prove_file(const std::string &path, const ProveOptions &options) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot read " + path);
    std::ostringstream text;
    text << in.rdbuf();
    return prove_text(text.str(), options);
}

BatchSummary run_batch(const std::string &directory,
                       const ProveOptions &options, int jobs) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(directory))
        throw std::runtime_error("not a directory: " + directory);

    std::vector<std::string> paths;
    for (const fs::directory_entry &entry :
         fs::recursive_directory_iterator(directory))
        if (entry.is_regular_file() && entry.path().extension() == ".trs")
            paths.push_back(entry.path().string());
    std::sort(paths.begin(), paths.end());

    BatchSummary summary;
    summary.files = static_cast<int>(paths.size());
    summary.rows.resize(paths.size());

    std::atomic<size_t> next{0};
    auto worker = [&]() {
        while (true) {
            size_t i = next.fetch_add(1);
            if (i >= paths.size())
                return;
            BatchRow &row = summary.rows[i];
            row.path = paths[i];
            Clock::time_point t0 = Clock::now();
            try {
                ProveReport report = prove_file(paths[i], options);
                row.outcome = report.yes ? "YES" : "NO";
            } catch (const UnsupportedSection &e) {
                row.outcome = "SKIPPED";
                row.detail = e.what();
            } catch (const std::exception &e) {
                row.outcome = "ERROR";
                row.detail = e.what();
            }
            row.seconds = ms_since(t0) / 1000.0;
        }
    };

    jobs = std::max(1, jobs);
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        for (int j = 0; j < jobs; ++j)
            threads.emplace_back(worker);
        for (std::thread &t : threads)
            t.join();
    }

    for (const BatchRow &row : summary.rows) {
        if (row.outcome == "YES")
            ++summary.yes;
        else if (row.outcome == "NO")
            ++summary.no;
        else if (row.outcome == "SKIPPED")
            ++summary.skipped;
        else
            ++summary.errors;
        summary.total_seconds += row.seconds;
        summary.max_seconds = std::max(summary.max_seconds, row.seconds);
    }
    if (summary.files > 0)
        summary.average_seconds = summary.total_seconds / summary.files;
    return summary;
}

const char *to_string(OrderVariant v) {
    return v == OrderVariant::Strict ? "strict" : "quasi";
}

const char *to_string(EncodingKind e) {
    return e == EncodingKind::Symbol ? "symbol" : "atom";
}

std::string render_text(const ProveReport &report, bool with_stats,
                        bool with_model) {
    std::ostringstream out;
    if (report.yes) {
        out << "YES\n";
        if (with_model)
            out << "precedence: " << to_string(report.precedence) << "\n";
    } else {
        out << "NO (no " << to_string(report.variant)
            << "-LPO precedence exists; this does not imply"
               " non-termination)\n";
    }
    if (with_stats) {
        const ProveStats &s = report.stats;
        out << "symbols: " << s.symbols << " (largest SCC: " << s.largest_scc
            << ")\n"
            << "cnf: " << s.cnf_vars << " vars, " << s.cnf_clauses
            << " clauses\n";
        char buffer[160];
        std::snprintf(buffer, sizeof buffer,
                      "time: parse %.2f ms, unfold %.2f ms, encode %.2f ms,"
                      " solve %.2f ms\n",
                      s.parse_ms, s.unfold_ms, s.encode_ms, s.solve_ms);
        out << buffer;
        if (s.scc_fallback)
            out << "note: SCC recombination failed; whole formula solved\n";
    }
    return out.str();
}

std::string render_json(const ProveReport &report) {
    nlohmann::json j;
    j["verdict"] = report.yes ? "YES" : "NO";
    j["variant"] = to_string(report.variant);
    j["encoding"] = to_string(report.encoding);
    j["scc"] = report.scc;
    if (report.yes)
        j["precedence"] = report.precedence;
    j["statistics"] = {
        {"symbols", report.stats.symbols},
        {"largest_scc", report.stats.largest_scc},
        {"cnf_vars", report.stats.cnf_vars},
        {"cnf_clauses", report.stats.cnf_clauses},
        {"scc_fallback", report.stats.scc_fallback},
        {"parse_ms", report.stats.parse_ms},
        {"unfold_ms", report.stats.unfold_ms},
        {"encode_ms", report.stats.encode_ms},
        {"solve_ms", report.stats.solve_ms},
    };
    return j.dump(2) + "\n";
}

std::string render_text(const BatchSummary &summary) {
    std::ostringstream out;
    for (const BatchRow &row : summary.rows) {
        char buffer[64];
        std::snprintf(buffer, sizeof buffer, "%8.3fs  ", row.seconds);
        out << buffer << row.outcome << "\t" << row.path;
        if (!row.detail.empty())
            out << "\t(" << row.detail << ")";
        out << "\n";
    }
    out << "files: " << summary.files << "  yes: " << summary.yes
        << "  no: " << summary.no << "  skipped: " << summary.skipped
        << "  errors: " << summary.errors << "\n";
    char buffer[120];
    std::snprintf(buffer, sizeof buffer,
                  "time: total %.3fs  average %.3fs  max %.3fs\n",
                  summary.total_seconds, summary.average_seconds,
                  summary.max_seconds);
    out << buffer;
    return out.str();
}

std::string render_json(const BatchSummary &summary) {
    nlohmann::json rows = nlohmann::json::array();
    for (const BatchRow &row : summary.rows) {
        nlohmann::json r = {{"path", row.path},
                            {"outcome", row.outcome},
                            {"seconds", row.seconds}};
        if (!row.detail.empty())
            r["detail"] = row.detail;
        rows.push_back(std::move(r));
    }
    nlohmann::json j = {
        {"files", summary.files},
        {"yes", summary.yes},
        {"no", summary.no},
        {"skipped", summary.skipped},
        {"errors", summary.errors},
        {"total_seconds", summary.total_seconds},
        {"average_seconds", summary.average_seconds},
        {"max_seconds", summary.max_seconds},
        {"rows", std::move(rows)},
    };
    return j.dump(2) + "\n";
}

} // namespace lposat
