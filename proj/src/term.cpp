#include "lposat/term.hpp"

namespace lposat {

namespace {

// Key for the hash-cons table. Variables and applications cannot collide
// because the tag byte differs; child ids identify subterms uniquely.
std::string node_key(bool is_var, std::string_view name,
                     const std::vector<const Term *> &args) {
    std::string key;
    key.reserve(name.size() + 1 + 4 * args.size());
    key.push_back(is_var ? 'v' : 'a');
    key.append(name);
    for (const Term *arg : args) {
        key.push_back('\x1f');
        key.append(std::to_string(arg->id));
    }
    return key;
}

} // namespace

const Term *TermArena::variable(std::string_view name) {
    std::string key = node_key(true, name, {});
    auto it = index_.find(key);
    if (it != index_.end())
        return it->second;
    nodes_.push_back(Term{static_cast<uint32_t>(nodes_.size()), true,
                          std::string(name), {}});
    const Term *t = &nodes_.back();
    index_.emplace(std::move(key), t);
    return t;
}

const Term *TermArena::app(std::string_view symbol,
                           std::vector<const Term *> args) {
    std::string key = node_key(false, symbol, args);
    auto it = index_.find(key);
    if (it != index_.end())
        return it->second;
    nodes_.push_back(Term{static_cast<uint32_t>(nodes_.size()), false,
                          std::string(symbol), std::move(args)});
    const Term *t = &nodes_.back();
    index_.emplace(std::move(key), t);
    return t;
}

std::set<std::string> term_vars(const Term *t) {
    std::set<std::string> vars;
    std::vector<const Term *> todo{t};
    while (!todo.empty()) {
        const Term *u = todo.back();
        todo.pop_back();
        if (u->is_var) {
            vars.insert(u->name);
        } else {
            for (const Term *arg : u->args)
                todo.push_back(arg);
        }
    }
    return vars;
}

std::string to_string(const Term *t) {
    if (t->is_var || t->args.empty())
        return t->name;
    std::string out = t->name;
    out.push_back('(');
    for (size_t i = 0; i < t->args.size(); ++i) {
        if (i > 0)
            out.push_back(',');
        out += to_string(t->args[i]);
    }
    out.push_back(')');
    return out;
}

std::string to_string(const Trs &trs) {
    // Variables are printed in order of first appearance so that
    // parse-print-parse is a fixpoint.
    std::vector<std::string> vars;
    std::set<std::string> seen;
    auto collect = [&](const Term *t, auto &&self) -> void {
        if (t->is_var) {
            if (seen.insert(t->name).second)
                vars.push_back(t->name);
            return;
        }
        for (const Term *arg : t->args)
            self(arg, self);
    };
    for (const Rule &rule : trs.rules) {
        collect(rule.lhs, collect);
        collect(rule.rhs, collect);
    }
    std::string out = "(VAR";
    for (const std::string &v : vars) {
        out.push_back(' ');
        out += v;
    }
    out += ")\n(RULES\n";
    for (const Rule &rule : trs.rules) {
        out += "  ";
        out += to_string(rule.lhs);
        out += " -> ";
        out += to_string(rule.rhs);
        out.push_back('\n');
    }
    out += ")\n";
    return out;
}

} // namespace lposat
