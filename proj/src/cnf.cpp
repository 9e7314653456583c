#include "lposat/cnf.hpp"

#include <charconv>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace lposat {

namespace {

constexpr uint8_t kPos = 1;
constexpr uint8_t kNeg = 2;

/// Polarities under which each node is referenced, starting from a positive
/// root. Not flips, Iff exposes its children both ways.
void mark_polarities(const PropFormula *node, uint8_t pol,
                     std::unordered_map<uint32_t, uint8_t> &marks) {
    uint8_t &mark = marks[node->id];
    uint8_t missing = pol & static_cast<uint8_t>(~mark);
    if (!missing)
        return;
    mark |= missing;
    switch (node->kind) {
    case PropKind::Not: {
        uint8_t flipped = static_cast<uint8_t>(((missing & kPos) ? kNeg : 0) |
                                               ((missing & kNeg) ? kPos : 0));
        mark_polarities(node->kids[0], flipped, marks);
        break;
    }
    case PropKind::Iff:
        mark_polarities(node->kids[0], kPos | kNeg, marks);
        mark_polarities(node->kids[1], kPos | kNeg, marks);
        break;
    default:
        for (const PropFormula *kid : node->kids)
            mark_polarities(kid, missing, marks);
        break;
    }
}

struct TseitinState {
    CnfInstance cnf;
    std::unordered_map<uint32_t, int> node_lit;
    const std::unordered_map<uint32_t, uint8_t> *marks = nullptr;
    bool polarity = false;

    int literal(const PropFormula *node) {
        auto it = node_lit.find(node->id);
        if (it != node_lit.end())
            return it->second;
        int lit = 0;
        switch (node->kind) {
        case PropKind::True:
        case PropKind::False:
            throw std::logic_error("tseitin: constant below the root");
        case PropKind::Var:
            lit = node->var;
            break;
        case PropKind::Not:
            lit = -literal(node->kids[0]);
            break;
        case PropKind::And:
        case PropKind::Or:
        case PropKind::Iff:
            lit = define(node);
            break;
        }
        node_lit.emplace(node->id, lit);
        return lit;
    }

    int define(const PropFormula *node) {
        std::vector<int> kids;
        kids.reserve(node->kids.size());
        for (const PropFormula *kid : node->kids)
            kids.push_back(literal(kid));
        int a = ++cnf.var_count;
        cnf.provenance.emplace(a, "aux node " + std::to_string(node->id));

        uint8_t pol = kPos | kNeg;
        if (polarity)
            pol = marks->at(node->id);
        switch (node->kind) {
        case PropKind::And: {
            if (pol & kPos)
                for (int l : kids)
                    cnf.clauses.push_back({-a, l});
            if (pol & kNeg) {
                std::vector<int> clause{a};
                for (int l : kids)
                    clause.push_back(-l);
                cnf.clauses.push_back(std::move(clause));
            }
            break;
        }
        case PropKind::Or: {
            if (pol & kPos) {
                std::vector<int> clause{-a};
                for (int l : kids)
                    clause.push_back(l);
                cnf.clauses.push_back(std::move(clause));
            }
            if (pol & kNeg)
                for (int l : kids)
                    cnf.clauses.push_back({a, -l});
            break;
        }
        case PropKind::Iff: {
            int x = kids[0], y = kids[1];
            if (pol & kPos) {
                cnf.clauses.push_back({-a, -x, y});
                cnf.clauses.push_back({-a, x, -y});
            }
            if (pol & kNeg) {
                cnf.clauses.push_back({a, x, y});
                cnf.clauses.push_back({a, -x, -y});
            }
            break;
        }
        default:
            break;
        }
        return a;
    }
};

} // namespace

CnfInstance tseitin(const PropFormula *root, const PropArena &arena,
                    bool polarity) {
    TseitinState state;
    state.cnf.var_count = arena.var_count();
    for (int v = 1; v <= arena.var_count(); ++v)
        state.cnf.provenance.emplace(v, arena.label(v));

    if (root->kind == PropKind::True)
        return std::move(state.cnf);
    if (root->kind == PropKind::False) {
        state.cnf.clauses.push_back({});
        return std::move(state.cnf);
    }

    std::unordered_map<uint32_t, uint8_t> marks;
    if (polarity) {
        mark_polarities(root, kPos, marks);
        state.marks = &marks;
        state.polarity = true;
    }
    int root_lit = state.literal(root);
    state.cnf.clauses.push_back({root_lit});
    return std::move(state.cnf);
}

bool verify_model(const CnfInstance &cnf, const std::vector<char> &model) {
    for (const std::vector<int> &clause : cnf.clauses) {
        bool satisfied = false;
        for (int lit : clause) {
            int v = lit > 0 ? lit : -lit;
            if (v >= static_cast<int>(model.size()))
                return false;
            if ((lit > 0) == (model[v] != 0)) {
                satisfied = true;
                break;
            }
        }
        if (!satisfied)
            return false;
    }
    return true;
}

std::string write_dimacs(const CnfInstance &cnf) {
    std::ostringstream out;
    out << "p cnf " << cnf.var_count << ' ' << cnf.clauses.size() << '\n';
    for (const auto &[v, label] : cnf.provenance)
        out << "c " << v << ' ' << label << '\n';
    for (const std::vector<int> &clause : cnf.clauses) {
        for (int lit : clause)
            out << lit << ' ';
        out << "0\n";
    }
    return out.str();
}

CnfInstance parse_dimacs(std::string_view text) {
    std::istringstream in{std::string(text)};
    CnfInstance cnf;
    bool have_header = false;
    size_t declared_clauses = 0;
    std::string line;
    std::vector<int> clause;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == 'c')
            continue;
        if (line[0] == 'p') {
            std::istringstream header(line);
            std::string p, fmt;
            if (!(header >> p >> fmt >> cnf.var_count >> declared_clauses) ||
                fmt != "cnf")
                throw std::runtime_error("parse_dimacs: bad problem line: " +
                                         line);
            have_header = true;
            continue;
        }
        if (!have_header)
            throw std::runtime_error("parse_dimacs: clause before problem line");
        std::istringstream body(line);
        int lit;
        while (body >> lit) {
            if (lit == 0) {
                cnf.clauses.push_back(clause);
                clause.clear();
            } else {
                if (std::abs(lit) > cnf.var_count)
                    throw std::runtime_error(
                        "parse_dimacs: literal out of range: " +
                        std::to_string(lit));
                clause.push_back(lit);
            }
        }
    }
    if (!have_header)
        throw std::runtime_error("parse_dimacs: missing problem line");
    if (!clause.empty())
        throw std::runtime_error("parse_dimacs: unterminated clause");
    if (cnf.clauses.size() != declared_clauses)
        throw std::runtime_error("parse_dimacs: clause count mismatch");
    return cnf;
}

SatResult read_external_result(std::string_view text, int var_count) {
    std::istringstream in{std::string(text)};
    std::string line;
    bool have_verdict = false;
    bool sat = false;
    bool limit = false;
    bool competition = false;
    std::vector<int> lits;

    auto read_lits = [&](std::istream &src) {
        int lit;
        while (src >> lit) {
            if (lit == 0)
                break;
            lits.push_back(lit);
        }
    };

    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty() || line[0] == 'c')
            continue;
        if (line.rfind("s ", 0) == 0) {
            std::string verdict = line.substr(2);
            competition = true;
            have_verdict = true;
            if (verdict == "SATISFIABLE")
                sat = true;
            else if (verdict == "UNSATISFIABLE")
                sat = false;
            else if (verdict == "UNKNOWN")
                limit = true;
            else
                throw std::runtime_error("unrecognized solver status: " + line);
        } else if (line.rfind("v ", 0) == 0 || line == "v") {
            std::istringstream body(line.substr(1));
            read_lits(body);
        } else if (!competition && !have_verdict) {
            if (line == "SAT") {
                have_verdict = true;
                sat = true;
                read_lits(in);
            } else if (line == "UNSAT") {
                have_verdict = true;
                sat = false;
            } else if (line == "UNKNOWN" || line == "INDETERMINATE") {
                have_verdict = true;
                limit = true;
            } else {
                throw std::runtime_error("unrecognized solver output: " + line);
            }
        }
    }
    if (!have_verdict)
        throw std::runtime_error("solver output contains no verdict");

    SatResult result;
    if (limit) {
        result.status = SolveStatus::Limit;
        return result;
    }
    if (!sat) {
        result.status = SolveStatus::Unsat;
        return result;
    }
    result.status = SolveStatus::Sat;
    result.model.assign(var_count + 1, 0);
    for (int lit : lits) {
        int v = lit > 0 ? lit : -lit;
        if (v > var_count)
            throw std::runtime_error("solver model mentions unknown variable " +
                                     std::to_string(v));
        result.model[v] = lit > 0;
    }
    return result;
}

} // namespace lposat
