#include "lposat/order_constraint.hpp"

#include <algorithm>
#include <stdexcept>

namespace lposat {

PoArena::PoArena() {
    nodes_.push_back(PoFormula{PoKind::True, 0, {}, {}});
    tru_ = &nodes_.back();
    nodes_.push_back(PoFormula{PoKind::False, 1, {}, {}});
    fls_ = &nodes_.back();
}

const PoFormula *PoArena::atom(std::string_view lhs, Rel rel,
                               std::string_view rhs) {
    if (lhs == rhs)
        return rel == Rel::Eq ? tru_ : fls_;
    PoAtom a{std::string(lhs), rel, std::string(rhs)};
    if (rel == Rel::Eq && a.rhs < a.lhs)
        std::swap(a.lhs, a.rhs);
    auto it = atom_index_.find(a);
    if (it != atom_index_.end())
        return it->second;
    nodes_.push_back(PoFormula{PoKind::Atom, static_cast<uint32_t>(nodes_.size()),
                               a, {}});
    const PoFormula *node = &nodes_.back();
    atom_index_.emplace(std::move(a), node);
    return node;
}

const PoFormula *PoArena::connective(PoKind kind,
                                     std::vector<const PoFormula *> parts) {
    const PoFormula *absorbing = kind == PoKind::And ? fls_ : tru_;
    const PoFormula *identity = kind == PoKind::And ? tru_ : fls_;

    std::vector<const PoFormula *> flat;
    std::set<uint32_t> seen;
    bool absorbed = false;
    auto add = [&](const PoFormula *p, auto &&self) -> void {
        if (absorbed || p == identity)
            return;
        if (p == absorbing) {
            absorbed = true;
            return;
        }
        if (p->kind == kind) {
            for (const PoFormula *kid : p->kids)
                self(kid, self);
            return;
        }
        if (seen.insert(p->id).second)
            flat.push_back(p);
    };
    for (const PoFormula *p : parts)
        add(p, add);

    if (absorbed)
        return absorbing;
    if (flat.empty())
        return identity;
    if (flat.size() == 1)
        return flat.front();

    std::string key(kind == PoKind::And ? "&" : "|");
    for (const PoFormula *p : flat) {
        key.push_back('\x1f');
        key.append(std::to_string(p->id));
    }
    auto it = node_index_.find(key);
    if (it != node_index_.end())
        return it->second;
    nodes_.push_back(PoFormula{kind, static_cast<uint32_t>(nodes_.size()),
                               {}, std::move(flat)});
    const PoFormula *node = &nodes_.back();
    node_index_.emplace(std::move(key), node);
    return node;
}

const PoFormula *PoArena::mk_and(std::vector<const PoFormula *> parts) {
    return connective(PoKind::And, std::move(parts));
}

const PoFormula *PoArena::mk_or(std::vector<const PoFormula *> parts) {
    return connective(PoKind::Or, std::move(parts));
}

const PoFormula *PoArena::negate(const PoFormula *f) {
    auto it = negate_memo_.find(f->id);
    if (it != negate_memo_.end())
        return it->second;
    const PoFormula *result = nullptr;
    switch (f->kind) {
    case PoKind::True:
        result = fls_;
        break;
    case PoKind::False:
        result = tru_;
        break;
    case PoKind::Atom:
        // Models are total orders, so the complement of one atom is a
        // disjunction of the two remaining relations between f and g.
        if (f->atom.rel == Rel::Gt)
            result = mk_or({atom(f->atom.rhs, Rel::Gt, f->atom.lhs),
                            atom(f->atom.lhs, Rel::Eq, f->atom.rhs)});
        else
            result = mk_or({atom(f->atom.lhs, Rel::Gt, f->atom.rhs),
                            atom(f->atom.rhs, Rel::Gt, f->atom.lhs)});
        break;
    case PoKind::And:
    case PoKind::Or: {
        std::vector<const PoFormula *> kids;
        kids.reserve(f->kids.size());
        for (const PoFormula *kid : f->kids)
            kids.push_back(negate(kid));
        result = f->kind == PoKind::And ? mk_or(std::move(kids))
                                        : mk_and(std::move(kids));
        break;
    }
    }
    negate_memo_.emplace(f->id, result);
    return result;
}

namespace {

template <typename Fn>
void visit_nodes(const PoFormula *f, Fn &&fn) {
    std::set<uint32_t> seen;
    std::vector<const PoFormula *> todo{f};
    while (!todo.empty()) {
        const PoFormula *node = todo.back();
        todo.pop_back();
        if (!seen.insert(node->id).second)
            continue;
        fn(node);
        for (const PoFormula *kid : node->kids)
            todo.push_back(kid);
    }
}

} // namespace

std::vector<PoAtom> atoms_of(const PoFormula *f) {
    std::vector<PoAtom> atoms;
    visit_nodes(f, [&](const PoFormula *node) {
        if (node->kind == PoKind::Atom)
            atoms.push_back(node->atom);
    });
    std::sort(atoms.begin(), atoms.end());
    return atoms;
}

std::set<std::string> symbols_of(const PoFormula *f) {
    std::set<std::string> symbols;
    visit_nodes(f, [&](const PoFormula *node) {
        if (node->kind == PoKind::Atom) {
            symbols.insert(node->atom.lhs);
            symbols.insert(node->atom.rhs);
        }
    });
    return symbols;
}

bool eval(const PoFormula *f, const Solution &theta) {
    std::unordered_map<uint32_t, bool> memo;
    auto go = [&](const PoFormula *node, auto &&self) -> bool {
        auto it = memo.find(node->id);
        if (it != memo.end())
            return it->second;
        bool value = false;
        switch (node->kind) {
        case PoKind::True:
            value = true;
            break;
        case PoKind::False:
            value = false;
            break;
        case PoKind::Atom: {
            int l = theta.at(node->atom.lhs);
            int r = theta.at(node->atom.rhs);
            value = node->atom.rel == Rel::Gt ? l > r : l == r;
            break;
        }
        case PoKind::And:
            value = true;
            for (const PoFormula *kid : node->kids)
                value = value && self(kid, self);
            break;
        case PoKind::Or:
            value = false;
            for (const PoFormula *kid : node->kids)
                value = value || self(kid, self);
            break;
        }
        memo.emplace(node->id, value);
        return value;
    };
    return go(f, go);
}

int DomainGraph::index_of(const std::string &symbol) const {
    auto it = std::lower_bound(vertices.begin(), vertices.end(), symbol);
    if (it == vertices.end() || *it != symbol)
        return -1;
    return static_cast<int>(it - vertices.begin());
}

DomainGraph domain_graph(const PoFormula *f) {
    DomainGraph graph;
    std::set<std::string> symbols = symbols_of(f);
    graph.vertices.assign(symbols.begin(), symbols.end());
    for (const PoAtom &a : atoms_of(f)) {
        int l = graph.index_of(a.lhs);
        int r = graph.index_of(a.rhs);
        graph.edges.emplace(l, r);
        if (a.rel == Rel::Eq)
            graph.edges.emplace(r, l);
    }
    return graph;
}

namespace {

// Tarjan's algorithm; emits each component once all components it reaches
// have been emitted, so reversing gives topological order.
struct TarjanState {
    const std::vector<std::vector<int>> &adj;
    std::vector<int> dfs_number;
    std::vector<int> low;
    std::vector<int> stack_index;
    std::vector<int> stack;
    int counter = 0;
    std::vector<std::vector<int>> components;

    explicit TarjanState(const std::vector<std::vector<int>> &adj)
        : adj(adj), dfs_number(adj.size(), -1), low(adj.size(), -1),
          stack_index(adj.size(), -1) {}

    void dfs(int v) {
        int number = counter++;
        dfs_number[v] = low[v] = number;
        stack_index[v] = static_cast<int>(stack.size());
        stack.push_back(v);
        for (int succ : adj[v]) {
            if (dfs_number[succ] == -1) {
                dfs(succ);
                low[v] = std::min(low[v], low[succ]);
            } else if (dfs_number[succ] < number && stack_index[succ] != -1) {
                low[v] = std::min(low[v], dfs_number[succ]);
            }
        }
        if (low[v] == number) {
            int base = stack_index[v];
            std::vector<int> component(stack.begin() + base, stack.end());
            for (int w : component)
                stack_index[w] = -1;
            stack.resize(base);
            components.push_back(std::move(component));
        }
    }
};

} // namespace

std::vector<std::vector<std::string>> DomainGraph::sccs() const {
    int n = static_cast<int>(vertices.size());
    std::vector<std::vector<int>> adj(n);
    for (const auto &[from, to] : edges)
        adj[from].push_back(to);

    TarjanState state(adj);
    for (int v = 0; v < n; ++v)
        if (state.dfs_number[v] == -1)
            state.dfs(v);

    std::reverse(state.components.begin(), state.components.end());
    std::vector<std::vector<std::string>> result;
    result.reserve(state.components.size());
    for (std::vector<int> &component : state.components) {
        std::sort(component.begin(), component.end());
        std::vector<std::string> names;
        names.reserve(component.size());
        for (int v : component)
            names.push_back(vertices[v]);
        result.push_back(std::move(names));
    }
    return result;
}

namespace {

const PoFormula *restrict_formula(PoArena &arena, const PoFormula *f,
                                  const std::set<std::string> &keep,
                                  std::unordered_map<uint32_t, const PoFormula *> &memo) {
    auto it = memo.find(f->id);
    if (it != memo.end())
        return it->second;
    const PoFormula *result = f;
    switch (f->kind) {
    case PoKind::True:
    case PoKind::False:
        break;
    case PoKind::Atom:
        if (!keep.count(f->atom.lhs) || !keep.count(f->atom.rhs))
            result = arena.tru();
        break;
    case PoKind::And:
    case PoKind::Or: {
        std::vector<const PoFormula *> kids;
        kids.reserve(f->kids.size());
        for (const PoFormula *kid : f->kids)
            kids.push_back(restrict_formula(arena, kid, keep, memo));
        result = f->kind == PoKind::And ? arena.mk_and(std::move(kids))
                                        : arena.mk_or(std::move(kids));
        break;
    }
    }
    memo.emplace(f->id, result);
    return result;
}

} // namespace

std::vector<const PoFormula *> scc_partition(PoArena &arena, const PoFormula *f) {
    std::vector<const PoFormula *> parts;
    for (const std::vector<std::string> &component : domain_graph(f).sccs()) {
        std::set<std::string> keep(component.begin(), component.end());
        std::unordered_map<uint32_t, const PoFormula *> memo;
        const PoFormula *part = restrict_formula(arena, f, keep, memo);
        if (part != arena.tru())
            parts.push_back(part);
    }
    return parts;
}

namespace {

// Flattened evaluator: one postorder pass per assignment, no hashing in
// the inner loop. Used by the brute-force oracle.
struct FlatFormula {
    struct Node {
        PoKind kind;
        int lhs = -1, rhs = -1;       // symbol indices for atoms
        Rel rel = Rel::Gt;
        std::vector<int> kids;        // slots of children
    };
    std::vector<Node> nodes;          // postorder: children before parents
    std::vector<std::string> symbols; // sorted

    explicit FlatFormula(const PoFormula *f) {
        std::set<std::string> syms = symbols_of(f);
        symbols.assign(syms.begin(), syms.end());
        std::unordered_map<uint32_t, int> slot;
        build(f, slot);
    }

    int build(const PoFormula *f, std::unordered_map<uint32_t, int> &slot) {
        auto it = slot.find(f->id);
        if (it != slot.end())
            return it->second;
        Node node;
        node.kind = f->kind;
        if (f->kind == PoKind::Atom) {
            node.lhs = symbol_index(f->atom.lhs);
            node.rhs = symbol_index(f->atom.rhs);
            node.rel = f->atom.rel;
        }
        for (const PoFormula *kid : f->kids)
            node.kids.push_back(build(kid, slot));
        nodes.push_back(std::move(node));
        int index = static_cast<int>(nodes.size()) - 1;
        slot.emplace(f->id, index);
        return index;
    }

    int symbol_index(const std::string &name) const {
        return static_cast<int>(std::lower_bound(symbols.begin(), symbols.end(),
                                                 name) -
                                symbols.begin());
    }

    bool eval(const std::vector<int> &values) const {
        std::vector<char> truth(nodes.size());
        for (size_t i = 0; i < nodes.size(); ++i) {
            const Node &node = nodes[i];
            switch (node.kind) {
            case PoKind::True:
                truth[i] = 1;
                break;
            case PoKind::False:
                truth[i] = 0;
                break;
            case PoKind::Atom:
                truth[i] = node.rel == Rel::Gt
                               ? values[node.lhs] > values[node.rhs]
                               : values[node.lhs] == values[node.rhs];
                break;
            case PoKind::And: {
                char v = 1;
                for (int kid : node.kids)
                    v = v && truth[kid];
                truth[i] = v;
                break;
            }
            case PoKind::Or: {
                char v = 0;
                for (int kid : node.kids)
                    v = v || truth[kid];
                truth[i] = v;
                break;
            }
            }
        }
        return truth.back();
    }
};

} // namespace

std::optional<Solution> brute_force_sat(const PoFormula *f, int max_symbols) {
    FlatFormula flat(f);
    int n = static_cast<int>(flat.symbols.size());
    if (n > max_symbols)
        throw std::invalid_argument("brute_force_sat: " + std::to_string(n) +
                                    " symbols exceed the limit of " +
                                    std::to_string(max_symbols));
    std::vector<int> values(n, 1);
    if (n == 0)
        return flat.eval(values) ? std::optional<Solution>(Solution{})
                                 : std::nullopt;
    while (true) {
        if (flat.eval(values)) {
            Solution theta;
            for (int i = 0; i < n; ++i)
                theta[flat.symbols[i]] = values[i];
            return theta;
        }
        int i = n - 1;
        while (i >= 0 && values[i] == n)
            values[i--] = 1;
        if (i < 0)
            return std::nullopt;
        ++values[i];
    }
}

Model solution_to_model(const Solution &theta,
                        const std::set<std::string> &symbols) {
    Model model;
    for (const std::string &f : symbols) {
        for (const std::string &g : symbols) {
            int a = theta.at(f), b = theta.at(g);
            if (a > b)
                model.insert(ModelAtom{f, Rel::Gt, g});
            else if (a == b)
                model.insert(ModelAtom{f, Rel::Eq, g});
        }
    }
    return model;
}

Solution linearize_model(const std::set<std::string> &symbols,
                         const Model &model) {
    std::vector<std::string> syms(symbols.begin(), symbols.end());
    auto index = [&](const std::string &name) {
        return static_cast<int>(std::lower_bound(syms.begin(), syms.end(),
                                                 name) -
                                syms.begin());
    };

    // Union equality classes first, then rank the class condensation by
    // longest path so every strict edge separates the ranks.
    std::vector<int> parent(syms.size());
    for (size_t i = 0; i < parent.size(); ++i)
        parent[i] = static_cast<int>(i);
    auto find = [&](int v) {
        while (parent[v] != v)
            v = parent[v] = parent[parent[v]];
        return v;
    };
    for (const ModelAtom &a : model)
        if (a.rel == Rel::Eq)
            parent[find(index(a.lhs))] = find(index(a.rhs));

    std::set<std::pair<int, int>> above;
    for (const ModelAtom &a : model) {
        if (a.rel != Rel::Gt)
            continue;
        int l = find(index(a.lhs)), r = find(index(a.rhs));
        if (l == r)
            throw std::logic_error("linearize_model: strict edge inside an equality class");
        above.emplace(l, r);
    }

    std::vector<std::vector<int>> successors(syms.size());
    for (const auto &[l, r] : above)
        successors[l].push_back(r);

    std::vector<int> rank(syms.size(), 0);
    std::vector<char> state(syms.size(), 0);
    auto height = [&](int v, auto &&self) -> int {
        if (state[v] == 2)
            return rank[v];
        if (state[v] == 1)
            throw std::logic_error("linearize_model: cycle among strict edges");
        state[v] = 1;
        int best = 0;
        for (int succ : successors[v])
            best = std::max(best, self(succ, self));
        state[v] = 2;
        rank[v] = best + 1;
        return rank[v];
    };

    Solution theta;
    for (size_t i = 0; i < syms.size(); ++i)
        theta[syms[i]] = height(find(static_cast<int>(i)), height);
    return theta;
}

std::string to_string(const PoAtom &a) {
    return "(" + a.lhs + (a.rel == Rel::Gt ? ">" : "=") + a.rhs + ")";
}

std::string to_string(const PoFormula *f) {
    switch (f->kind) {
    case PoKind::True:
        return "true";
    case PoKind::False:
        return "false";
    case PoKind::Atom:
        return to_string(f->atom);
    case PoKind::And:
    case PoKind::Or: {
        const char *op = f->kind == PoKind::And ? " /\\ " : " \\/ ";
        std::string out = "(";
        for (size_t i = 0; i < f->kids.size(); ++i) {
            if (i > 0)
                out += op;
            out += to_string(f->kids[i]);
        }
        out.push_back(')');
        return out;
    }
    }
    return {};
}

} // namespace lposat
