#pragma once

#include "lposat/cnf.hpp"

namespace lposat {

/// Resource budget for one solve() call. Negative values mean unlimited.
/// When a budget is exhausted the result status is SolveStatus::Limit,
/// which is reported distinctly from Unsat.
struct SolverLimits {
    int64_t max_conflicts = -1;
    double max_seconds = -1.0;
};

/// Complete CDCL search: two-watched-literal propagation, first-UIP clause
/// learning, activity-ordered decisions with phase saving, Luby restarts.
/// Fully deterministic — decisions break activity ties on the lowest
/// variable id and nothing is randomized. Every Sat result has been
/// verified against all clauses before being returned.
SatResult solve(const CnfInstance &cnf, const SolverLimits &limits = {});

} // namespace lposat
