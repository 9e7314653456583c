#ifndef LPOSAT_ORDER_CONSTRAINT_HPP
#define LPOSAT_ORDER_CONSTRAINT_HPP

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace lposat {

enum class Rel : uint8_t { Gt, Eq };

/// An order atom (f>g) or (f=g) on symbol names. Equality atoms are stored
/// with lhs < rhs in lexicographic name order so that (f=g) and (g=f) are
/// one object; reflexive atoms never reach this struct because the arena
/// folds (f=f) to true and (f>f) to false.
struct PoAtom {
    std::string lhs;
    Rel rel;
    std::string rhs;

    auto operator<=>(const PoAtom &) const = default;
};

enum class PoKind : uint8_t { True, False, Atom, And, Or };

/// A negation-free partial order constraint. Nodes are hash-consed by a
/// PoArena and structurally shared, so the formula is a DAG and node ids
/// double as memoization keys. And/Or nodes always have at least two
/// children and never a constant child.
struct PoFormula {
    PoKind kind;
    uint32_t id;
    PoAtom atom;                              // Atom nodes only
    std::vector<const PoFormula *> kids;      // And/Or nodes only
};

class PoArena {
public:
    PoArena();

    const PoFormula *tru() const { return tru_; }
    const PoFormula *fls() const { return fls_; }

    /// (f rel g) with on-the-fly simplification of reflexive atoms.
    const PoFormula *atom(std::string_view lhs, Rel rel, std::string_view rhs);

    /// Simplifying connectives: constants are absorbed, same-connective
    /// children flattened, duplicates dropped, singletons collapsed.
    const PoFormula *mk_and(std::vector<const PoFormula *> parts);
    const PoFormula *mk_or(std::vector<const PoFormula *> parts);

    /// Negation eliminated via totality of models: the result is again
    /// negation free.
    const PoFormula *negate(const PoFormula *f);

    size_t size() const { return nodes_.size(); }

private:
    const PoFormula *connective(PoKind kind, std::vector<const PoFormula *> parts);

    std::deque<PoFormula> nodes_;
    const PoFormula *tru_;
    const PoFormula *fls_;
    std::map<PoAtom, const PoFormula *> atom_index_;
    std::unordered_map<std::string, const PoFormula *> node_index_;
    std::unordered_map<uint32_t, const PoFormula *> negate_memo_;
};

/// An integer assignment to symbols; only the relative order of the values
/// matters.
using Solution = std::map<std::string, int>;

/// The atoms / symbols occurring in a formula (each DAG node visited once).
std::vector<PoAtom> atoms_of(const PoFormula *f);
std::set<std::string> symbols_of(const PoFormula *f);

/// Truth of f under a solution, with (f>g) read as theta(f) > theta(g).
/// Throws std::out_of_range if theta misses a symbol of f.
bool eval(const PoFormula *f, const Solution &theta);

struct DomainGraph {
    std::vector<std::string> vertices;            // sorted
    std::set<std::pair<int, int>> edges;          // indices into vertices

    int index_of(const std::string &symbol) const;
    /// Strongly connected components in topological order of the
    /// condensation: a component precedes the components it reaches.
    std::vector<std::vector<std::string>> sccs() const;
};

/// Graph with an edge (f,g) for every atom (f>g) or (f=g) of f.
DomainGraph domain_graph(const PoFormula *f);

/// Restricts f to the symbols in each strongly connected component of its
/// domain graph, substituting true for every atom that crosses components.
/// Components whose restriction collapses to true are dropped.
std::vector<const PoFormula *> scc_partition(PoArena &arena, const PoFormula *f);

/// Complete satisfiability oracle: enumerates every assignment of the n
/// symbols of f to {1..n}. Throws std::invalid_argument when f has more
/// than max_symbols symbols.
std::optional<Solution> brute_force_sat(const PoFormula *f, int max_symbols = 7);

/// An order atom as it appears in a model: unlike PoAtom, equalities keep
/// their orientation and reflexive atoms are allowed.
struct ModelAtom {
    std::string lhs;
    Rel rel;
    std::string rhs;

    auto operator<=>(const ModelAtom &) const = default;
};

using Model = std::set<ModelAtom>;

/// The total-order model induced by a solution: every (f R g) with
/// theta(f) R theta(g), including reflexive equalities.
Model solution_to_model(const Solution &theta, const std::set<std::string> &symbols);

/// Rebuilds a solution from a model by ranking the equality classes along
/// the order; values are dense from 1, so they stay within {1..n}.
Solution linearize_model(const std::set<std::string> &symbols, const Model &model);

std::string to_string(const PoAtom &a);
std::string to_string(const PoFormula *f);

} // namespace lposat

#endif
