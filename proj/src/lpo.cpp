#include "lposat/lpo.hpp"

namespace lposat {

const PoFormula *LpoUnfolder::gt(const Term *s, const Term *t) {
    // Only s = f(s_1,...,s_n) can dominate anything.
    if (s->is_var)
        return arena_.fls();
    auto it = gt_memo_.find(key(s, t));
    if (it != gt_memo_.end())
        return it->second;

    // Case 2: some immediate subterm of s is equivalent to t or above it.
    std::vector<const PoFormula *> cases;
    for (const Term *si : s->args)
        cases.push_back(arena_.mk_or({equiv(si, t), gt(si, t)}));

    // Case 1 applies only when t is an application as well.
    if (!t->is_var) {
        std::vector<const PoFormula *> parts;
        for (const Term *tj : t->args)
            parts.push_back(gt(s, tj));

        const PoFormula *head = arena_.atom(s->name, Rel::Gt, t->name);
        if (variant_ == OrderVariant::Quasi) {
            head = arena_.mk_or(
                {head, arena_.mk_and({arena_.atom(s->name, Rel::Eq, t->name),
                                      lex(s->args, t->args)})});
        } else if (s->name == t->name) {
            // Strict: equal heads are decided here, so the lexicographic
            // descent is only ever unfolded for identical symbols.
            head = arena_.mk_or({head, lex(s->args, t->args)});
        }
        parts.push_back(head);
        cases.push_back(arena_.mk_and(std::move(parts)));
    }

    const PoFormula *result = arena_.mk_or(std::move(cases));
    gt_memo_.emplace(key(s, t), result);
    return result;
}

const PoFormula *LpoUnfolder::equiv(const Term *s, const Term *t) {
    if (s == t)
        return arena_.tru();
    if (variant_ == OrderVariant::Strict || s->is_var || t->is_var ||
        s->args.size() != t->args.size())
        return arena_.fls();
    auto it = equiv_memo_.find(key(s, t));
    if (it != equiv_memo_.end())
        return it->second;
    std::vector<const PoFormula *> parts{
        arena_.atom(s->name, Rel::Eq, t->name)};
    for (size_t i = 0; i < s->args.size(); ++i)
        parts.push_back(equiv(s->args[i], t->args[i]));
    const PoFormula *result = arena_.mk_and(std::move(parts));
    equiv_memo_.emplace(key(s, t), result);
    return result;
}

const PoFormula *LpoUnfolder::lex(const std::vector<const Term *> &ss,
                                  const std::vector<const Term *> &ts) {
    return lex_from(ss, ts, 0);
}

const PoFormula *LpoUnfolder::lex_from(const std::vector<const Term *> &ss,
                                       const std::vector<const Term *> &ts,
                                       size_t i) {
    if (i == ss.size())
        return arena_.fls();
    if (i == ts.size())
        return arena_.tru();
    return arena_.mk_or(
        {gt(ss[i], ts[i]),
         arena_.mk_and({equiv(ss[i], ts[i]), lex_from(ss, ts, i + 1)})});
}

const PoFormula *lpo_gt(PoArena &arena, const Term *s, const Term *t,
                        OrderVariant v) {
    return LpoUnfolder(arena, v).gt(s, t);
}

const PoFormula *term_equiv(PoArena &arena, const Term *s, const Term *t,
                            OrderVariant v) {
    return LpoUnfolder(arena, v).equiv(s, t);
}

const PoFormula *lex_gt(PoArena &arena, const std::vector<const Term *> &ss,
                        const std::vector<const Term *> &ts, OrderVariant v) {
    return LpoUnfolder(arena, v).lex(ss, ts);
}

const PoFormula *trs_constraint(PoArena &arena, const Trs &trs,
                                OrderVariant v) {
    LpoUnfolder unfolder(arena, v);
    std::vector<const PoFormula *> parts;
    parts.reserve(trs.rules.size());
    for (const Rule &rule : trs.rules)
        parts.push_back(unfolder.gt(rule.lhs, rule.rhs));
    return arena.mk_and(std::move(parts));
}

namespace {

bool ground_equiv(const Term *s, const Term *t, const Solution &prec,
                  OrderVariant v) {
    if (s == t)
        return true;
    if (v == OrderVariant::Strict || s->is_var || t->is_var ||
        s->args.size() != t->args.size())
        return false;
    if (prec.at(s->name) != prec.at(t->name))
        return false;
    for (size_t i = 0; i < s->args.size(); ++i)
        if (!ground_equiv(s->args[i], t->args[i], prec, v))
            return false;
    return true;
}

bool ground_lex(const Term *s, const Term *t, const Solution &prec,
                OrderVariant v, size_t i);

bool ground_gt(const Term *s, const Term *t, const Solution &prec,
               OrderVariant v) {
    if (s->is_var)
        return false;
    for (const Term *si : s->args)
        if (ground_equiv(si, t, prec, v) || ground_gt(si, t, prec, v))
            return true;
    if (t->is_var)
        return false;
    for (const Term *tj : t->args)
        if (!ground_gt(s, tj, prec, v))
            return false;
    if (prec.at(s->name) > prec.at(t->name))
        return true;
    bool heads_equal = v == OrderVariant::Strict
                           ? s->name == t->name
                           : prec.at(s->name) == prec.at(t->name);
    return heads_equal && ground_lex(s, t, prec, v, 0);
}

bool ground_lex(const Term *s, const Term *t, const Solution &prec,
                OrderVariant v, size_t i) {
    if (i == s->args.size())
        return false;
    if (i == t->args.size())
        return true;
    if (ground_gt(s->args[i], t->args[i], prec, v))
        return true;
    return ground_equiv(s->args[i], t->args[i], prec, v) &&
           ground_lex(s, t, prec, v, i + 1);
}

} // namespace

bool lpo_check_ground(const Term *s, const Term *t, const Solution &prec,
                      OrderVariant v) {
    return ground_gt(s, t, prec, v);
}

} // namespace lposat
