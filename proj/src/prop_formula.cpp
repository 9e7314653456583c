#include "lposat/prop_formula.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace lposat {

PropArena::PropArena() {
    nodes_.push_back(PropFormula{PropKind::True, 0, 0, {}});
    tru_ = &nodes_.back();
    nodes_.push_back(PropFormula{PropKind::False, 1, 0, {}});
    fls_ = &nodes_.back();
}

int PropArena::fresh_var(std::string label) {
    labels_.push_back(std::move(label));
    var_nodes_.push_back(nullptr);
    return static_cast<int>(labels_.size());
}

const PropFormula *PropArena::var(int v) {
    if (v < 1 || v > var_count())
        throw std::out_of_range("PropArena::var: unknown variable " +
                                std::to_string(v));
    const PropFormula *&node = var_nodes_[v - 1];
    if (!node) {
        nodes_.push_back(
            PropFormula{PropKind::Var, static_cast<uint32_t>(nodes_.size()), v, {}});
        node = &nodes_.back();
    }
    return node;
}

const PropFormula *PropArena::intern(PropFormula node, std::string key) {
    auto it = node_index_.find(key);
    if (it != node_index_.end())
        return it->second;
    node.id = static_cast<uint32_t>(nodes_.size());
    nodes_.push_back(std::move(node));
    const PropFormula *result = &nodes_.back();
    node_index_.emplace(std::move(key), result);
    return result;
}

const PropFormula *PropArena::mk_not(const PropFormula *f) {
    if (f == tru_)
        return fls_;
    if (f == fls_)
        return tru_;
    if (f->kind == PropKind::Not)
        return f->kids[0];
    auto it = not_memo_.find(f->id);
    if (it != not_memo_.end())
        return it->second;
    nodes_.push_back(PropFormula{PropKind::Not,
                                 static_cast<uint32_t>(nodes_.size()), 0, {f}});
    const PropFormula *result = &nodes_.back();
    not_memo_.emplace(f->id, result);
    return result;
}

const PropFormula *PropArena::connective(PropKind kind,
                                         std::vector<const PropFormula *> parts) {
    const PropFormula *absorbing = kind == PropKind::And ? fls_ : tru_;
    const PropFormula *identity = kind == PropKind::And ? tru_ : fls_;

    std::vector<const PropFormula *> flat;
    std::set<uint32_t> seen;
    bool absorbed = false;
    auto add = [&](const PropFormula *p, auto &&self) -> void {
        if (absorbed || p == identity)
            return;
        if (p == absorbing) {
            absorbed = true;
            return;
        }
        if (p->kind == kind) {
            for (const PropFormula *kid : p->kids)
                self(kid, self);
            return;
        }
        if (seen.insert(p->id).second)
            flat.push_back(p);
    };
    for (const PropFormula *p : parts)
        add(p, add);

    if (absorbed)
        return absorbing;
    if (flat.empty())
        return identity;
    if (flat.size() == 1)
        return flat.front();

    std::string key(kind == PropKind::And ? "&" : "|");
    for (const PropFormula *p : flat) {
        key.push_back('\x1f');
        key.append(std::to_string(p->id));
    }
    return intern(PropFormula{kind, 0, 0, std::move(flat)}, std::move(key));
}

const PropFormula *PropArena::mk_and(std::vector<const PropFormula *> parts) {
    return connective(PropKind::And, std::move(parts));
}

const PropFormula *PropArena::mk_or(std::vector<const PropFormula *> parts) {
    return connective(PropKind::Or, std::move(parts));
}

const PropFormula *PropArena::mk_iff(const PropFormula *a,
                                     const PropFormula *b) {
    if (a == b)
        return tru_;
    if (a == tru_)
        return b;
    if (b == tru_)
        return a;
    if (a == fls_)
        return mk_not(b);
    if (b == fls_)
        return mk_not(a);
    if ((a->kind == PropKind::Not && a->kids[0] == b) ||
        (b->kind == PropKind::Not && b->kids[0] == a))
        return fls_;
    if (a->id > b->id)
        std::swap(a, b);
    std::string key = "=\x1f" + std::to_string(a->id) + "\x1f" +
                      std::to_string(b->id);
    return intern(PropFormula{PropKind::Iff, 0, 0, {a, b}}, std::move(key));
}

bool eval_prop(const PropFormula *f, const std::vector<char> &assignment) {
    std::unordered_map<uint32_t, bool> memo;
    auto go = [&](const PropFormula *node, auto &&self) -> bool {
        auto it = memo.find(node->id);
        if (it != memo.end())
            return it->second;
        bool value = false;
        switch (node->kind) {
        case PropKind::True:
            value = true;
            break;
        case PropKind::False:
            value = false;
            break;
        case PropKind::Var:
            value = assignment.at(node->var) != 0;
            break;
        case PropKind::Not:
            value = !self(node->kids[0], self);
            break;
        case PropKind::And:
            value = true;
            for (const PropFormula *kid : node->kids)
                value = value && self(kid, self);
            break;
        case PropKind::Or:
            value = false;
            for (const PropFormula *kid : node->kids)
                value = value || self(kid, self);
            break;
        case PropKind::Iff:
            value = self(node->kids[0], self) == self(node->kids[1], self);
            break;
        }
        memo.emplace(node->id, value);
        return value;
    };
    return go(f, go);
}

std::vector<int> prop_vars_of(const PropFormula *f) {
    std::set<int> vars;
    std::set<uint32_t> seen;
    std::vector<const PropFormula *> todo{f};
    while (!todo.empty()) {
        const PropFormula *node = todo.back();
        todo.pop_back();
        if (!seen.insert(node->id).second)
            continue;
        if (node->kind == PropKind::Var)
            vars.insert(node->var);
        for (const PropFormula *kid : node->kids)
            todo.push_back(kid);
    }
    return {vars.begin(), vars.end()};
}

} // namespace lposat
