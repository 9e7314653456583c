#pragma once

// Shared helpers for the test suites: deterministic generators for terms,
// partial-order constraints and propositional formulas, plus brute-force
// equivalence checks. Every generator takes an explicit engine so each test
// pins its own seed and failures reproduce exactly.

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "lposat/lpo.hpp"
#include "lposat/order_constraint.hpp"
#include "lposat/prop_formula.hpp"

namespace testsupport {

using namespace lposat;

inline int pick(std::mt19937 &rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

/// Random negation-free constraint: up to max_atoms random atoms over the
/// given symbols, combined bottom-up with random connectives. Reflexive
/// draws simplify to constants, which exercises absorption.
inline const PoFormula *random_po(PoArena &arena, std::mt19937 &rng,
                                  const std::vector<std::string> &symbols,
                                  int max_atoms) {
    int n = static_cast<int>(symbols.size());
    std::vector<const PoFormula *> pool;
    int atoms = pick(rng, 1, max_atoms);
    for (int i = 0; i < atoms; ++i) {
        const std::string &f = symbols[pick(rng, 0, n - 1)];
        const std::string &g = symbols[pick(rng, 0, n - 1)];
        Rel rel = pick(rng, 0, 2) == 0 ? Rel::Eq : Rel::Gt;
        pool.push_back(arena.atom(f, rel, g));
    }
    while (pool.size() > 1) {
        int take = std::min<int>(static_cast<int>(pool.size()), pick(rng, 2, 3));
        std::vector<const PoFormula *> group(pool.end() - take, pool.end());
        pool.resize(pool.size() - take);
        pool.push_back(pick(rng, 0, 1) ? arena.mk_and(std::move(group))
                                       : arena.mk_or(std::move(group)));
    }
    return pool.front();
}

/// Random conjunction of atoms (no disjunction), for properties that only
/// hold on this fragment.
inline const PoFormula *random_po_conjunction(
    PoArena &arena, std::mt19937 &rng,
    const std::vector<std::string> &symbols, int max_atoms) {
    int n = static_cast<int>(symbols.size());
    std::vector<const PoFormula *> atoms;
    int count = pick(rng, 1, max_atoms);
    for (int i = 0; i < count; ++i) {
        // Distinct symbols: (f > f) and (f = f) simplify to constants and
        // would not be atoms at all.
        int a = pick(rng, 0, n - 1);
        int b = pick(rng, 0, n - 2);
        if (b >= a)
            ++b;
        Rel rel = pick(rng, 0, 2) == 0 ? Rel::Eq : Rel::Gt;
        atoms.push_back(arena.atom(symbols[a], rel, symbols[b]));
    }
    return arena.mk_and(std::move(atoms));
}

/// Logical equivalence over total orders: a and b differ iff
/// (a ∧ ¬b) ∨ (b ∧ ¬a) has a model, decided by the brute-force oracle.
inline bool po_equivalent(PoArena &arena, const PoFormula *a,
                          const PoFormula *b) {
    const PoFormula *difference =
        arena.mk_or({arena.mk_and({a, arena.negate(b)}),
                     arena.mk_and({b, arena.negate(a)})});
    return !brute_force_sat(difference).has_value();
}

/// Every distinct total-order model of f over its own symbols, enumerated
/// exhaustively (assignments into {1..n}, deduplicated through the induced
/// atom sets).
inline std::set<Model> all_models(const PoFormula *f) {
    std::set<std::string> symbol_set = symbols_of(f);
    std::vector<std::string> syms(symbol_set.begin(), symbol_set.end());
    int n = static_cast<int>(syms.size());
    std::set<Model> models;
    std::vector<int> values(n, 1);
    while (true) {
        Solution theta;
        for (int i = 0; i < n; ++i)
            theta[syms[i]] = values[i];
        if (eval(f, theta))
            models.insert(solution_to_model(theta, symbol_set));
        int i = n - 1;
        while (i >= 0 && values[i] == n)
            values[i--] = 1;
        if (i < 0)
            return models;
        ++values[i];
    }
}

/// Random term over the fixed signature h/3, f/2, g/1, a/0, b/0 and
/// variables X, Y, Z.
inline const Term *random_term(TermArena &arena, std::mt19937 &rng,
                               int depth) {
    static const char *variables[] = {"X", "Y", "Z"};
    int roll = pick(rng, 0, depth <= 0 ? 2 : 6);
    switch (roll) {
    case 0:
        return arena.app("a");
    case 1:
        return arena.app("b");
    case 2:
        return arena.variable(variables[pick(rng, 0, 2)]);
    case 3:
    case 4:
        return arena.app("g", {random_term(arena, rng, depth - 1)});
    case 5:
        return arena.app("f", {random_term(arena, rng, depth - 1),
                               random_term(arena, rng, depth - 1)});
    default:
        return arena.app("h", {random_term(arena, rng, depth - 1),
                               random_term(arena, rng, depth - 1),
                               random_term(arena, rng, depth - 1)});
    }
}

/// Random ground term (no variables) over the same signature.
inline const Term *random_ground_term(TermArena &arena, std::mt19937 &rng,
                                      int depth) {
    int roll = pick(rng, 0, depth <= 0 ? 1 : 5);
    switch (roll) {
    case 0:
        return arena.app("a");
    case 1:
        return arena.app("b");
    case 2:
    case 3:
        return arena.app("g", {random_ground_term(arena, rng, depth - 1)});
    case 4:
        return arena.app("f", {random_ground_term(arena, rng, depth - 1),
                               random_ground_term(arena, rng, depth - 1)});
    default:
        return arena.app("h", {random_ground_term(arena, rng, depth - 1),
                               random_ground_term(arena, rng, depth - 1),
                               random_ground_term(arena, rng, depth - 1)});
    }
}

/// Random precedence over the given symbols: a bijection onto {1..n} when
/// injective, otherwise arbitrary values in {1..n} (ties allowed).
inline Solution random_precedence(std::mt19937 &rng,
                                  const std::set<std::string> &symbols,
                                  bool injective) {
    std::vector<std::string> syms(symbols.begin(), symbols.end());
    int n = static_cast<int>(syms.size());
    Solution prec;
    if (injective) {
        std::vector<int> values(n);
        for (int i = 0; i < n; ++i)
            values[i] = i + 1;
        std::shuffle(values.begin(), values.end(), rng);
        for (int i = 0; i < n; ++i)
            prec[syms[i]] = values[i];
    } else {
        for (int i = 0; i < n; ++i)
            prec[syms[i]] = pick(rng, 1, n);
    }
    return prec;
}

/// Random propositional formula over variables 1..var_count, which must
/// already exist in the arena.
inline const PropFormula *random_prop(PropArena &arena, std::mt19937 &rng,
                                      int var_count, int depth) {
    if (depth <= 0 || pick(rng, 0, 4) == 0) {
        const PropFormula *leaf = arena.var(pick(rng, 1, var_count));
        return pick(rng, 0, 1) ? leaf : arena.mk_not(leaf);
    }
    switch (pick(rng, 0, 3)) {
    case 0: {
        std::vector<const PropFormula *> kids;
        int count = pick(rng, 2, 3);
        for (int i = 0; i < count; ++i)
            kids.push_back(random_prop(arena, rng, var_count, depth - 1));
        return arena.mk_and(std::move(kids));
    }
    case 1: {
        std::vector<const PropFormula *> kids;
        int count = pick(rng, 2, 3);
        for (int i = 0; i < count; ++i)
            kids.push_back(random_prop(arena, rng, var_count, depth - 1));
        return arena.mk_or(std::move(kids));
    }
    case 2:
        return arena.mk_iff(random_prop(arena, rng, var_count, depth - 1),
                            random_prop(arena, rng, var_count, depth - 1));
    default:
        return arena.mk_not(random_prop(arena, rng, var_count, depth - 1));
    }
}

/// Exhaustive truth-table satisfiability over var_count ≤ ~20 variables.
inline bool tt_satisfiable(const PropFormula *f, int var_count) {
    std::vector<char> assignment(var_count + 1, 0);
    for (uint32_t bits = 0; bits < (1u << var_count); ++bits) {
        for (int v = 1; v <= var_count; ++v)
            assignment[v] = static_cast<char>((bits >> (v - 1)) & 1);
        if (eval_prop(f, assignment))
            return true;
    }
    return false;
}

} // namespace testsupport
