#pragma once

#include <cstdint>
#include <deque>
#include <string>
#include <unordered_map>
#include <vector>

namespace lposat {

enum class PropKind : uint8_t { True, False, Var, Not, And, Or, Iff };

/// Node of a propositional formula DAG. Nodes are owned by a PropArena and
/// hash-consed, so equal subformulas are one node and `id` identifies a node
/// uniquely within its arena.
struct PropFormula {
    PropKind kind;
    uint32_t id;
    int var = 0; // variable id for Var nodes, 1-based
    std::vector<const PropFormula *> kids;
};

/// Arena for propositional formulas plus the variable table. Constructors
/// simplify on the fly: constants are absorbed, double negation collapses,
/// nested conjunctions/disjunctions are flattened and deduplicated, and
/// trivial biconditionals reduce to a constant or a child. Consequently
/// True/False never appear below the root of a built formula.
class PropArena {
  public:
    PropArena();

    const PropFormula *tru() const { return tru_; }
    const PropFormula *fls() const { return fls_; }

    /// Allocates the next variable id (dense from 1) with a description
    /// that ends up in the DIMACS provenance comments.
    int fresh_var(std::string label);

    const PropFormula *var(int v);
    const PropFormula *mk_not(const PropFormula *f);
    const PropFormula *mk_and(std::vector<const PropFormula *> parts);
    const PropFormula *mk_or(std::vector<const PropFormula *> parts);
    const PropFormula *mk_iff(const PropFormula *a, const PropFormula *b);

    int var_count() const { return static_cast<int>(labels_.size()); }
    const std::string &label(int v) const { return labels_.at(v - 1); }
    size_t size() const { return nodes_.size(); }

  private:
    const PropFormula *connective(PropKind kind,
                                  std::vector<const PropFormula *> parts);
    const PropFormula *intern(PropFormula node, std::string key);

    std::deque<PropFormula> nodes_;
    const PropFormula *tru_;
    const PropFormula *fls_;
    std::vector<std::string> labels_;
    std::vector<const PropFormula *> var_nodes_;
    std::unordered_map<std::string, const PropFormula *> node_index_;
    std::unordered_map<uint32_t, const PropFormula *> not_memo_;
};

/// Truth of f under an assignment indexed by variable id (entry [v] for
/// variable v; index 0 is unused). The assignment must cover every variable
/// occurring in f.
bool eval_prop(const PropFormula *f, const std::vector<char> &assignment);

/// Variables occurring in f, ascending.
std::vector<int> prop_vars_of(const PropFormula *f);

} // namespace lposat
