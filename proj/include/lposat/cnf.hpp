#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "lposat/prop_formula.hpp"

namespace lposat {

/// Clause literals use the DIMACS convention: +v for variable v, -v for its
/// negation, ids starting at 1.
struct CnfInstance {
    int var_count = 0;
    std::vector<std::vector<int>> clauses;
    /// Variable id → description (symbol bit, atom proxy, Tseitin auxiliary).
    std::map<int, std::string> provenance;
};

enum class SolveStatus : uint8_t { Sat, Unsat, Limit };

struct SatResult {
    SolveStatus status = SolveStatus::Limit;
    /// Indexed by variable id ([0] unused); meaningful only when status is Sat.
    std::vector<char> model;
};

/// Equisatisfiable CNF of the formula DAG: one auxiliary variable per
/// distinct And/Or/Iff node (shared nodes are encoded once), negation folded
/// into literal signs, the root asserted as a unit clause. A True root gives
/// the empty instance, a False root a single empty clause. With `polarity`
/// set, only the clause direction required by each node's polarity is
/// emitted (Plaisted–Greenbaum); the default keeps full biconditionals.
CnfInstance tseitin(const PropFormula *root, const PropArena &arena,
                    bool polarity = false);

/// True iff the assignment satisfies every clause.
bool verify_model(const CnfInstance &cnf, const std::vector<char> &model);

/// DIMACS text: the `p cnf` header, provenance as `c` comments, then one
/// 0-terminated clause per line.
std::string write_dimacs(const CnfInstance &cnf);

/// Parses DIMACS text (comments ignored). Throws std::runtime_error on
/// malformed input.
CnfInstance parse_dimacs(std::string_view text);

/// Parses the output of an external SAT solver: either the competition
/// convention (`s SATISFIABLE` + `v` lines) or the bare `SAT\n<model> 0`
/// convention. `s UNKNOWN`/`UNKNOWN` map to SolveStatus::Limit. Throws
/// std::runtime_error on anything else.
SatResult read_external_result(std::string_view text, int var_count);

} // namespace lposat
