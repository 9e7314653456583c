#pragma once

#include <unordered_map>

#include "lposat/order_constraint.hpp"
#include "lposat/term.hpp"

namespace lposat {

/// Which flavour of precedence the lexicographic path order is built on:
/// a strict partial order on symbols, or a non-strict one (symbols may be
/// equated). The quasi variant replaces syntactic identity of terms by
/// structural equivalence up to equated head symbols.
enum class OrderVariant : uint8_t { Strict, Quasi };

/// Unfolds the recursive definition of s >_lpo t into a partial-order
/// constraint over the head symbols of s and t.
///
/// All terms passed to one unfolder must come from a single TermArena:
/// hash-consing makes pointer equality coincide with syntactic identity,
/// which the strict variant relies on. Results are memoized on the
/// (s, t) pair, so repeated sub-problems share one formula node.
class LpoUnfolder {
  public:
    LpoUnfolder(PoArena &arena, OrderVariant variant)
        : arena_(arena), variant_(variant) {}

    /// Constraint equivalent to s >_lpo t.
    const PoFormula *gt(const Term *s, const Term *t);

    /// Constraint equivalent to s ~ t: syntactic identity when strict,
    /// structural equivalence up to equated head symbols when quasi.
    const PoFormula *equiv(const Term *s, const Term *t);

    /// Constraint for ⟨ss⟩ >lex ⟨ts⟩ under the induced order.
    const PoFormula *lex(const std::vector<const Term *> &ss,
                         const std::vector<const Term *> &ts);

  private:
    const PoFormula *lex_from(const std::vector<const Term *> &ss,
                              const std::vector<const Term *> &ts, size_t i);

    static uint64_t key(const Term *s, const Term *t) {
        return (static_cast<uint64_t>(s->id) << 32) | t->id;
    }

    PoArena &arena_;
    OrderVariant variant_;
    std::unordered_map<uint64_t, const PoFormula *> gt_memo_;
    std::unordered_map<uint64_t, const PoFormula *> equiv_memo_;
};

/// One-shot conveniences wrapping a fresh unfolder.
const PoFormula *lpo_gt(PoArena &arena, const Term *s, const Term *t,
                        OrderVariant v);
const PoFormula *term_equiv(PoArena &arena, const Term *s, const Term *t,
                            OrderVariant v);
const PoFormula *lex_gt(PoArena &arena, const std::vector<const Term *> &ss,
                        const std::vector<const Term *> &ts, OrderVariant v);

/// Conjunction of lhs >_lpo rhs over all rules, in rule order. This is the
/// constraint whose satisfiability is equivalent to LPO termination of the
/// system under the chosen variant.
const PoFormula *trs_constraint(PoArena &arena, const Trs &trs, OrderVariant v);

/// Decides s >_lpo t directly against a fixed precedence, by the same
/// recursion the unfolder encodes. Deliberately independent of the formula
/// machinery; used as a differential oracle in the tests.
bool lpo_check_ground(const Term *s, const Term *t, const Solution &prec,
                      OrderVariant v);

} // namespace lposat
