#pragma once

#include "lposat/order_constraint.hpp"
#include "lposat/prop_formula.hpp"

namespace lposat {

/// Binary coding of symbols: each symbol owns k propositional variables,
/// bits[f][i-1] holding bit i (least significant first). k is
/// max(1, ceil(log2 n)) for n symbols, so even a single symbol gets a bit
/// and values range over {0..2^k-1}; no upper bound is imposed because any
/// satisfying order linearizes into {1..n} anyway.
struct SymbolCoding {
    int k = 0;
    std::map<std::string, std::vector<int>> bits;
};

/// Result of the symbol-based encoding of a partial-order constraint:
/// [φ] ∧ ⋀_a ([a] ↔ encode_a) where [φ] replaces each atom by its proxy
/// variable and encode_a compares the bit vectors of the atom's symbols.
struct SymbolInstance {
    const PoFormula *source = nullptr;
    const PropFormula *formula = nullptr;
    SymbolCoding coding;
    std::map<PoAtom, int> proxies;
};

/// Result of the atom-based encoding: one propositional variable per
/// ordered pair of occurring symbols, [φ] conjoined with the explicit
/// partial-order axioms. When φ contains no equality atoms the reduced
/// form with only transitivity and asymmetry of > is emitted.
struct AtomInstance {
    const PoFormula *source = nullptr;
    const PropFormula *formula = nullptr;
    std::map<PoAtom, int> atom_vars;
    bool reduced = false;
    size_t axiom_count = 0;
};

/// Allocates k fresh bit variables per symbol, symbols in sorted order.
SymbolCoding make_coding(PropArena &arena, const std::set<std::string> &symbols);

/// ⋀_{i=1..k} (f_i ↔ g_i).
const PropFormula *encode_eq_bits(PropArena &arena, const std::string &f,
                                  const std::string &g,
                                  const SymbolCoding &coding);

/// Unsigned bit-vector comparison: (f_k ∧ ¬g_k) ∨ ((f_k ↔ g_k) ∧ ...),
/// grounding out at f_1 ∧ ¬g_1.
const PropFormula *encode_gt_bits(PropArena &arena, const std::string &f,
                                  const std::string &g,
                                  const SymbolCoding &coding);

SymbolInstance encode_symbol_based(PropArena &arena, const PoFormula *phi);
AtomInstance encode_atom_based(PropArena &arena, const PoFormula *phi);

/// Integer value of each symbol's bit vector under the model.
Solution decode_bits(const std::vector<char> &model,
                     const SymbolCoding &coding);

/// Decodes a satisfying model of the instance into a Solution and asserts
/// that it actually satisfies the source constraint.
Solution decode_solution(const std::vector<char> &model,
                         const SymbolInstance &instance);

/// Same for the atom-based instance: the true atom variables form a model
/// in the partial-order sense, which is linearized into integer values.
Solution decode_solution(const std::vector<char> &model,
                         const AtomInstance &instance);

/// Equivalence classes of symbols ordered strictly descending by value.
using Precedence = std::vector<std::vector<std::string>>;

Precedence precedence_of(const Solution &theta);

/// Human-readable form, e.g. "- > * > +" or "div = i".
std::string to_string(const Precedence &precedence);

} // namespace lposat
