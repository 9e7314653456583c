#include "lposat/encode.hpp"

#include <bit>
#include <stdexcept>
#include <unordered_map>

namespace lposat {

SymbolCoding make_coding(PropArena &arena,
                         const std::set<std::string> &symbols) {
    SymbolCoding coding;
    size_t n = symbols.size();
    if (n == 0)
        return coding;
    coding.k = std::max(1, static_cast<int>(std::bit_width(n - 1)));
    for (const std::string &f : symbols) {
        std::vector<int> &bits = coding.bits[f];
        bits.reserve(coding.k);
        for (int i = 1; i <= coding.k; ++i)
            bits.push_back(arena.fresh_var(f + " bit " + std::to_string(i)));
    }
    return coding;
}

const PropFormula *encode_eq_bits(PropArena &arena, const std::string &f,
                                  const std::string &g,
                                  const SymbolCoding &coding) {
    const std::vector<int> &fb = coding.bits.at(f);
    const std::vector<int> &gb = coding.bits.at(g);
    std::vector<const PropFormula *> parts;
    parts.reserve(coding.k);
    for (int i = 0; i < coding.k; ++i)
        parts.push_back(arena.mk_iff(arena.var(fb[i]), arena.var(gb[i])));
    return arena.mk_and(std::move(parts));
}

const PropFormula *encode_gt_bits(PropArena &arena, const std::string &f,
                                  const std::string &g,
                                  const SymbolCoding &coding) {
    const std::vector<int> &fb = coding.bits.at(f);
    const std::vector<int> &gb = coding.bits.at(g);
    const PropFormula *gt = arena.mk_and(
        {arena.var(fb[0]), arena.mk_not(arena.var(gb[0]))});
    for (int i = 1; i < coding.k; ++i) {
        const PropFormula *fi = arena.var(fb[i]);
        const PropFormula *gi = arena.var(gb[i]);
        gt = arena.mk_or({arena.mk_and({fi, arena.mk_not(gi)}),
                          arena.mk_and({arena.mk_iff(fi, gi), gt})});
    }
    return gt;
}

namespace {

/// [φ]: the source formula with each atom replaced by its propositional
/// variable.
const PropFormula *lift(PropArena &arena, const PoFormula *phi,
                        const std::map<PoAtom, int> &atom_var,
                        std::unordered_map<uint32_t, const PropFormula *> &memo) {
    auto it = memo.find(phi->id);
    if (it != memo.end())
        return it->second;
    const PropFormula *result = nullptr;
    switch (phi->kind) {
    case PoKind::True:
        result = arena.tru();
        break;
    case PoKind::False:
        result = arena.fls();
        break;
    case PoKind::Atom:
        result = arena.var(atom_var.at(phi->atom));
        break;
    case PoKind::And:
    case PoKind::Or: {
        std::vector<const PropFormula *> kids;
        kids.reserve(phi->kids.size());
        for (const PoFormula *kid : phi->kids)
            kids.push_back(lift(arena, kid, atom_var, memo));
        result = phi->kind == PoKind::And ? arena.mk_and(std::move(kids))
                                          : arena.mk_or(std::move(kids));
        break;
    }
    }
    memo.emplace(phi->id, result);
    return result;
}

} // namespace

SymbolInstance encode_symbol_based(PropArena &arena, const PoFormula *phi) {
    SymbolInstance instance;
    instance.source = phi;
    instance.coding = make_coding(arena, symbols_of(phi));

    for (const PoAtom &a : atoms_of(phi))
        instance.proxies.emplace(a, arena.fresh_var("atom " + to_string(a)));

    std::unordered_map<uint32_t, const PropFormula *> memo;
    std::vector<const PropFormula *> parts{
        lift(arena, phi, instance.proxies, memo)};
    for (const auto &[a, v] : instance.proxies) {
        const PropFormula *compare =
            a.rel == Rel::Gt
                ? encode_gt_bits(arena, a.lhs, a.rhs, instance.coding)
                : encode_eq_bits(arena, a.lhs, a.rhs, instance.coding);
        parts.push_back(arena.mk_iff(arena.var(v), compare));
    }
    instance.formula = arena.mk_and(std::move(parts));
    return instance;
}

AtomInstance encode_atom_based(PropArena &arena, const PoFormula *phi) {
    AtomInstance instance;
    instance.source = phi;

    std::set<std::string> symbol_set = symbols_of(phi);
    std::vector<std::string> syms(symbol_set.begin(), symbol_set.end());

    instance.reduced = true;
    for (const PoAtom &a : atoms_of(phi))
        if (a.rel == Rel::Eq)
            instance.reduced = false;

    auto declare = [&](const std::string &f, Rel rel, const std::string &g) {
        PoAtom a{f, rel, g};
        instance.atom_vars.emplace(a, arena.fresh_var("atom " + to_string(a)));
    };
    for (const std::string &f : syms)
        for (const std::string &g : syms) {
            if (f != g)
                declare(f, Rel::Gt, g);
            if (!instance.reduced)
                declare(f, Rel::Eq, g);
        }

    auto gt = [&](const std::string &f, const std::string &g) {
        return arena.var(instance.atom_vars.at(PoAtom{f, Rel::Gt, g}));
    };
    auto eq = [&](const std::string &f, const std::string &g) {
        return arena.var(instance.atom_vars.at(PoAtom{f, Rel::Eq, g}));
    };
    auto implies = [&](const PropFormula *a, const PropFormula *b,
                       const PropFormula *c) {
        return arena.mk_or({arena.mk_not(arena.mk_and({a, b})), c});
    };

    // [φ] with canonically oriented equalities resolved against the
    // (lhs, rhs) variable of the same orientation.
    std::unordered_map<uint32_t, const PropFormula *> memo;
    std::vector<const PropFormula *> parts{
        lift(arena, phi, instance.atom_vars, memo)};

    auto emit = [&](const PropFormula *axiom) {
        parts.push_back(axiom);
        ++instance.axiom_count;
    };

    // Transitivity of > over distinct triples and asymmetry over pairs:
    // all that an equality-free constraint needs.
    for (const std::string &f : syms)
        for (const std::string &g : syms) {
            if (f >= g)
                continue;
            emit(arena.mk_not(arena.mk_and({gt(f, g), gt(g, f)})));
        }
    for (const std::string &f : syms)
        for (const std::string &g : syms)
            for (const std::string &h : syms) {
                if (f == g || g == h || f == h)
                    continue;
                emit(implies(gt(f, g), gt(g, h), gt(f, h)));
            }

    if (!instance.reduced) {
        // Reflexivity and symmetry of =.
        for (const std::string &f : syms)
            emit(eq(f, f));
        for (const std::string &f : syms)
            for (const std::string &g : syms) {
                if (f == g)
                    continue;
                emit(arena.mk_or({arena.mk_not(eq(f, g)), eq(g, f)}));
            }
        // Transitivity of = and the two identity axioms, distinct triples.
        for (const std::string &f : syms)
            for (const std::string &g : syms)
                for (const std::string &h : syms) {
                    if (f == g || g == h || f == h)
                        continue;
                    emit(implies(eq(f, g), eq(g, h), eq(f, h)));
                    emit(implies(gt(f, g), eq(g, h), gt(f, h)));
                    emit(implies(eq(f, g), gt(g, h), gt(f, h)));
                }
        // Comparability, and exclusivity of > against =. Without the
        // latter a model could set both [f>g] and [f=g], which no integer
        // assignment realizes.
        for (const std::string &f : syms)
            for (const std::string &g : syms) {
                if (f < g)
                    emit(arena.mk_or({gt(f, g), gt(g, f), eq(f, g)}));
                if (f != g)
                    emit(arena.mk_not(arena.mk_and({gt(f, g), eq(f, g)})));
            }
    }

    instance.formula = arena.mk_and(std::move(parts));
    return instance;
}

Solution decode_bits(const std::vector<char> &model,
                     const SymbolCoding &coding) {
    Solution theta;
    for (const auto &[f, bits] : coding.bits) {
        int value = 0;
        for (int i = 0; i < coding.k; ++i) {
            size_t v = static_cast<size_t>(bits[i]);
            if (v >= model.size())
                throw std::invalid_argument("decode_bits: incomplete model");
            if (model[v])
                value |= 1 << i;
        }
        theta[f] = value;
    }
    return theta;
}

Solution decode_solution(const std::vector<char> &model,
                         const SymbolInstance &instance) {
    Solution theta = decode_bits(model, instance.coding);
    if (!eval(instance.source, theta))
        throw std::logic_error(
            "decode_solution: decoded values do not satisfy the constraint");
    return theta;
}

Solution decode_solution(const std::vector<char> &model,
                         const AtomInstance &instance) {
    Model mu;
    for (const auto &[a, v] : instance.atom_vars) {
        if (a.lhs == a.rhs)
            continue;
        if (static_cast<size_t>(v) < model.size() && model[v])
            mu.insert(ModelAtom{a.lhs, a.rel, a.rhs});
    }
    Solution theta = linearize_model(symbols_of(instance.source), mu);
    if (!eval(instance.source, theta))
        throw std::logic_error(
            "decode_solution: linearized model does not satisfy the constraint");
    return theta;
}

Precedence precedence_of(const Solution &theta) {
    std::map<int, std::vector<std::string>> classes;
    for (const auto &[f, value] : theta)
        classes[value].push_back(f);
    Precedence precedence;
    for (auto it = classes.rbegin(); it != classes.rend(); ++it)
        precedence.push_back(it->second);
    return precedence;
}

std::string to_string(const Precedence &precedence) {
    std::string out;
    for (size_t i = 0; i < precedence.size(); ++i) {
        if (i > 0)
            out += " > ";
        for (size_t j = 0; j < precedence[i].size(); ++j) {
            if (j > 0)
                out += " = ";
            out += precedence[i][j];
        }
    }
    return out;
}

} // namespace lposat
