#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "lposat/encode.hpp"
#include "lposat/lpo.hpp"
#include "lposat/solver.hpp"
#include "lposat/tpdb.hpp"

namespace lposat {

enum class EncodingKind : uint8_t { Symbol, Atom };

struct ProveOptions {
    OrderVariant variant = OrderVariant::Strict;
    EncodingKind encoding = EncodingKind::Symbol;
    /// Decompose the constraint into its SCC restrictions before solving.
    /// Off by default; the whole-formula path is the reference behaviour.
    bool scc = false;
    /// Empty for the built-in solver, otherwise a command invoked as
    /// `<command> <dimacs-file>` whose standard output is parsed.
    std::string external_solver;
    /// When non-empty, the whole-constraint CNF is written here before
    /// solving.
    std::string dimacs_path;
    /// Wall-clock budget for the solving stage; negative means none.
    double timeout_seconds = -1.0;
    /// Use polarity-reduced Tseitin clauses instead of full biconditionals.
    bool polarity_tseitin = false;
};

struct ProveStats {
    int symbols = 0;
    int largest_scc = 0;
    int cnf_vars = 0;
    int cnf_clauses = 0;
    /// True when the SCC decomposition produced per-component solutions
    /// that did not recombine into a witness and the whole formula was
    /// solved instead. Decomposition is an optimisation, never trusted
    /// blindly: a recombined solution is always checked against the
    /// original constraint.
    bool scc_fallback = false;
    double parse_ms = 0;
    double unfold_ms = 0;
    double encode_ms = 0;
    double solve_ms = 0;
};

struct ProveReport {
    bool yes = false;
    OrderVariant variant = OrderVariant::Strict;
    EncodingKind encoding = EncodingKind::Symbol;
    bool scc = false;
    /// Witness precedence; non-empty exactly when the verdict is YES and
    /// the system has symbols.
    Precedence precedence;
    Solution solution;
    ProveStats stats;
};

struct TimeoutError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

ProveReport prove_text(const std::string &text, const ProveOptions &options);
ProveReport prove_file(const std::string &path, const ProveOptions &options);

struct BatchRow {
    std::string path;
    std::string outcome; // YES | NO | SKIPPED | ERROR
    std::string detail;  // section / error message for SKIPPED and ERROR
    double seconds = 0;
};

struct BatchSummary {
    int files = 0;
    int yes = 0;
    int no = 0;
    int skipped = 0;
    int errors = 0;
    double total_seconds = 0;
    double average_seconds = 0;
    double max_seconds = 0;
    std::vector<BatchRow> rows; // sorted by path
};

/// Proves every *.trs file under `directory` (recursively). Files whose
/// parse hits a THEORY/STRATEGY section are counted as skipped. `jobs`
/// pipelines run concurrently; rows stay sorted regardless.
BatchSummary run_batch(const std::string &directory,
                       const ProveOptions &options, int jobs);

std::string render_text(const ProveReport &report, bool with_stats,
                        bool with_model);
std::string render_json(const ProveReport &report);
std::string render_text(const BatchSummary &summary);
std::string render_json(const BatchSummary &summary);

const char *to_string(OrderVariant v);
const char *to_string(EncodingKind e);

} // namespace lposat
