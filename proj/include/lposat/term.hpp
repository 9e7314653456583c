#ifndef LPOSAT_TERM_HPP
#define LPOSAT_TERM_HPP

#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace lposat {

/// A first-order term: either a variable or an application f(t1,...,tn).
/// Terms are hash-consed by a TermArena, so pointer equality is syntactic
/// equality within one arena and every term carries a dense id usable as a
/// memoization key.
struct Term {
    uint32_t id;
    bool is_var;
    std::string name;                     // variable name or head symbol
    std::vector<const Term *> args;       // empty for variables

    int arity() const { return static_cast<int>(args.size()); }
};

class TermArena {
public:
    const Term *variable(std::string_view name);
    const Term *app(std::string_view symbol, std::vector<const Term *> args = {});

    size_t size() const { return nodes_.size(); }

private:
    std::deque<Term> nodes_;
    std::unordered_map<std::string, const Term *> index_;
};

struct Rule {
    const Term *lhs;
    const Term *rhs;
};

/// A term rewrite system. The signature maps each function symbol to its
/// arity and always equals the set of symbols occurring in the rules.
struct Trs {
    std::vector<Rule> rules;
    std::map<std::string, int> signature;
    std::shared_ptr<TermArena> arena;     // owns the rule terms
};

/// Names of the variables occurring in t.
std::set<std::string> term_vars(const Term *t);

std::string to_string(const Term *t);
std::string to_string(const Trs &trs);

} // namespace lposat

#endif
